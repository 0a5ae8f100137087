#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cat2/shell.hpp"

#include <fstream>
#include <sstream>

using namespace cat2::shell;

namespace {

// DSL source whose diagram matches the elements fixture used across the
// other test binaries
const char* fixture_dsl = R"(
# the walking arrow with a terminal fiber over a and the arrow over b
category One { objects: * }
category Two { objects: a b; arrows: f: a -> b }
twocategory B { objects: a b; arrows: f: a -> b }
functor pick : One -> Two { on * = a }
diagram F : B -> Cat { on a = One; on b = Two; on f = pick }

task elements (f=F)
task check-opfib (k=elements(F).projection)
task reconstruct (f=F)
task comma-iso (f=F)
task equivalence (f=F, g=F, flavor=lax)
task lan-delta1 (f=F)
task validate (entity=B)
)";

Document fixture_doc() { return parse(fixture_dsl); }

// the same document built directly against the library
Document handmade_doc() {
    Document d;
    FiniteCategory one = terminal_category();
    FiniteCategory two = walking_arrow();
    Finite2Category base = locally_discrete(walking_arrow());
    d.categories = {{"One", one}, {"Two", two}};
    d.two_categories = {{"B", base}};
    CatValued2Functor f;
    f.base = base;
    f.on_obj["a"] = one;
    f.on_obj["b"] = two;
    Functor pick;
    pick.src = one;
    pick.tgt = two;
    pick.on_obj = {{"*", "a"}};
    pick.on_mor = {{"id:*", "id:a"}};
    f.on1["f"] = pick;
    f.on1["id:a"] = identity_functor(one);
    f.on1["id:b"] = identity_functor(two);
    for (const Id& c : base.all_2cells()) {
        auto [x, y] = base.cell2_home(c);
        f.on2[c] = identity_nat(f.cell1(base.hom_at(x, y).src(c)));
    }
    d.diagrams = {{"F", f}};
    d.markings = {{"M", trivial_marking(base)}};
    d.transformations = {{"T", identity_transformation(f, Flavor::Lax)}};
    TaskRecord t;
    t.op = "elements";
    t.args["f"] = "F";
    d.tasks = {t};
    return d;
}

}  // namespace

TEST_CASE("the DSL walking arrow matches the kernel builder") {
    Document d = parse("category Two { objects: a b; arrows: f: a -> b }");
    REQUIRE(d.categories.size() == 1);
    CHECK(d.categories[0].first == "Two");
    CHECK(d.categories[0].second == walking_arrow());
}

TEST_CASE("free composition closure over a composable pair") {
    Document d = parse(
        "category P { objects: x y z; arrows: f: x -> y, g: y -> z }");
    const FiniteCategory& c = d.categories[0].second;
    CHECK(validate(c).pass);
    CHECK(c.morphisms.size() == 6);  // three identities, f, g, f.g
    CHECK(c.compose("g", "f") == "f.g");
}

TEST_CASE("relations identify parallel composites") {
    Document d = parse(
        "category Sq { objects: a b c d;"
        " arrows: f: a -> b, g: b -> d, h: a -> c, k: c -> d;"
        " relations: f.g = h.k }");
    const FiniteCategory& c = d.categories[0].second;
    CHECK(validate(c).pass);
    CHECK(c.morphisms.size() == 9);
    CHECK(c.compose("g", "f") == c.compose("k", "h"));
    CHECK(c.compose("g", "f") == "f.g");
}

TEST_CASE("a free endomorphism diverges under a small cap") {
    Limits small;
    small.max_morphisms = 16;
    CHECK_THROWS_AS(parse("category N { objects: x; arrows: s: x -> x }", small),
                    ClosureDiverged);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse("category Bad {\n objects: a;\n arrows: f: a -> zz }");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse("category X { objects: a }\ntask nop"), ParseError);
    CHECK_THROWS_AS(parse("category X { objects: a }\ncategory X { objects: b }"),
                    ParseError);
}

TEST_CASE("the DSL twocategory with a cell matches the walking 2-cell in size") {
    Document d = parse(
        "twocategory W { objects: a b; arrows: f: a -> b, g: a -> b;"
        " cells: m: f => g }");
    const Finite2Category& k = d.two_categories[0].second;
    Finite2Category w = walking_2cell();
    CHECK(validate(k).pass);
    CHECK(k.objects == w.objects);
    CHECK(k.all_1cells().size() == w.all_1cells().size());
    CHECK(k.all_2cells().size() == w.all_2cells().size());
}

TEST_CASE("running the fixture document passes every task") {
    Document d = fixture_doc();
    RunConfig cfg;
    cfg.timing = false;
    cfg.probe_2cats = {terminal_2category()};
    Report r = run(d, cfg);
    CHECK(r.pass);
    REQUIRE(r.tasks.size() == 7);
    for (const TaskResult& t : r.tasks) {
        CHECK(t.pass);
        CHECK(t.error.empty());
    }
    // the elements task reports the hand-counted sizes
    REQUIRE(!r.tasks[0].notes.empty());
    CHECK(r.tasks[0].notes[0] == "total: 3 objects, 6 1-cells, 6 2-cells");
}

TEST_CASE("reports are byte-identical across runs without timing") {
    Document d = fixture_doc();
    RunConfig cfg;
    cfg.timing = false;
    cfg.probe_2cats = {terminal_2category()};
    std::string a = report_json(run(d, cfg), false);
    std::string b = report_json(run(d, cfg), false);
    CHECK(a == b);
    CHECK(a.find("elapsed_ms") == std::string::npos);
    CHECK(report_json(run(d, cfg), true).find("elapsed_ms") != std::string::npos);
}

TEST_CASE("task failures are captured and later tasks still run") {
    Document d = parse(
        "category One { objects: * }\n"
        "task frobnicate (x=One)\n"
        "task validate (entity=One)");
    Report r = run(d);
    CHECK(!r.pass);
    REQUIRE(r.tasks.size() == 2);
    CHECK(!r.tasks[0].pass);
    CHECK(!r.tasks[0].error.empty());
    CHECK(r.tasks[1].pass);
}

TEST_CASE("an empty task list passes by vacuity") {
    Document d = parse("category One { objects: * }");
    Report r = run(d);
    CHECK(r.pass);
    CHECK(r.tasks.empty());
}

TEST_CASE("serialize then parse is the identity on documents") {
    for (const Document& d : {fixture_doc(), handmade_doc()}) {
        std::string s = serialize(d);
        Document d2 = parse(s);
        CHECK(d2 == d);
        CHECK(serialize(d2) == s);
    }
}

TEST_CASE("the DSL and handmade fixtures agree after serialization") {
    Document a = fixture_doc();
    Document b = handmade_doc();
    REQUIRE(a.diagrams.size() == 1);
    REQUIRE(b.diagrams.size() == 1);
    CHECK(a.diagrams[0].second == b.diagrams[0].second);
    CHECK(a.two_categories[0].second == b.two_categories[0].second);
}

TEST_CASE("DOT export of a category") {
    std::string dot = export_dot("Two", walking_arrow());
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("\"a\" -> \"b\"") != std::string::npos);
    CHECK(dot.find("id:a") == std::string::npos);  // identities omitted
}

TEST_CASE("DOT export of an elements construction styles the marked 1-cells") {
    Document d = fixture_doc();
    ElementsResult e = elements_op(d.diagrams[0].second);
    std::string dot = export_dot("elements", e);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("penwidth") != std::string::npos);
}

TEST_CASE("DOT export of a 2-category anchors its 2-cells") {
    std::string dot = export_dot("W", walking_2cell());
    CHECK(dot.find("style=dashed") != std::string::npos);
    CHECK(dot.find("mid:") != std::string::npos);
}

TEST_CASE("run writes DOT files when a prefix is configured") {
    Document d = parse("category Two { objects: a b; arrows: f: a -> b }");
    RunConfig cfg;
    cfg.dot_prefix = "/tmp/cat2_shell_test_";
    run(d, cfg);
    std::ifstream in("/tmp/cat2_shell_test_Two.dot");
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("digraph") != std::string::npos);
}

TEST_CASE("JSON documents parse directly") {
    std::string s = serialize(handmade_doc());
    REQUIRE(!s.empty());
    CHECK(s[0] == '{');
    Document d = parse(s);
    CHECK(d.transformations.size() == 1);
    CHECK(check_transformation(d.transformations[0].second).pass);
    CHECK(d.markings.size() == 1);
}
