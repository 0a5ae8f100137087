#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cat2/limits.hpp"

using namespace cat2::limits;

namespace {

// independent counts used as oracles below
std::size_t commutative_square_count(const FiniteCategory& c) {
    // pairs of morphisms (m, n) fitting in a square with some connecting pair
    std::size_t count = 0;
    for (const Morphism& m : c.morphisms)
        for (const Morphism& n : c.morphisms)
            for (const Id& p : c.hom(m.src, n.src))
                for (const Id& q : c.hom(m.tgt, n.tgt))
                    if (c.compose(q, m.id) == c.compose(n.id, p)) ++count;
    return count;
}

CatValued2Functor point_diagram(const FiniteCategory& d) {
    return constant_diagram(terminal_2category(), d);
}

}  // namespace

TEST_CASE("cylinder limit over a point recovers the value") {
    for (const FiniteCategory& d :
         {walking_arrow(), commutative_square(), parallel_pair()}) {
        LimitResult res = weighted_limit(point_diagram(terminal_category()),
                                         point_diagram(d));
        CHECK(res.report.pass);
        CHECK(res.limit.objects.size() == d.objects.size());
        CHECK(res.limit.morphisms.size() == d.morphisms.size());
        CHECK(cat2::kernel::validate(res.limit).pass);
    }
}

TEST_CASE("representable weight picks out the value at its object") {
    Finite2Category base = locally_discrete(walking_arrow());
    CatValued2Functor w = representable(base, "a");
    CatValued2Functor f;
    f.base = base;
    f.on_obj["a"] = walking_arrow();
    f.on_obj["b"] = terminal_category();
    Functor bang;
    bang.src = walking_arrow();
    bang.tgt = terminal_category();
    bang.on_obj = {{"a", "*"}, {"b", "*"}};
    bang.on_mor = {{"id:a", "id:*"}, {"id:b", "id:*"}, {"f", "id:*"}};
    f.on1["f"] = bang;
    f.on1["id:a"] = identity_functor(f.on_obj["a"]);
    f.on1["id:b"] = identity_functor(f.on_obj["b"]);
    for (const Id& d : base.all_2cells())
        f.on2[d] = identity_nat(f.cell1(base.hom_at(base.cell2_home(d).first,
                                                    base.cell2_home(d).second)
                                             .src(d)));
    REQUIRE(validate(f).pass);

    LimitResult res = weighted_limit(w, f);
    CHECK(res.report.pass);
    // the limit is f(a) = the walking arrow
    CHECK(res.limit.objects.size() == 2);
    CHECK(res.limit.morphisms.size() == 3);
}

TEST_CASE("conical strict limit over a discrete two-object base is the product") {
    Finite2Category base = locally_discrete(discrete_category({"p", "q"}));
    CatValued2Functor w = constant_diagram(base, terminal_category());
    CatValued2Functor f;
    f.base = base;
    f.on_obj["p"] = walking_arrow();
    f.on_obj["q"] = walking_arrow();
    f.on1["id:p"] = identity_functor(f.on_obj["p"]);
    f.on1["id:q"] = identity_functor(f.on_obj["q"]);
    for (const Id& d : base.all_2cells())
        f.on2[d] = identity_nat(identity_functor(walking_arrow()));
    REQUIRE(validate(f).pass);

    LimitResult res = weighted_limit(w, f);
    CHECK(res.report.pass);
    CHECK(res.limit.objects.size() == 4);
    CHECK(res.limit.morphisms.size() == 9);
}

TEST_CASE("marked conical limit counts match the cone oracles") {
    Finite2Category base = locally_discrete(walking_arrow());
    CatValued2Functor f = constant_diagram(base, walking_arrow());

    LimitResult lax = marked_lax_conical_limit(chaotic_marking(base), f);
    CHECK(lax.report.pass);
    // oracle: lax cones over the constant diagram at D correspond to
    // morphisms of D, cone morphisms to commutative squares
    CHECK(lax.limit.objects.size() == walking_arrow().morphisms.size());
    CHECK(lax.limit.morphisms.size() == commutative_square_count(walking_arrow()));

    LimitResult strict = marked_lax_conical_limit(trivial_marking(base), f);
    CHECK(strict.report.pass);
    CHECK(strict.limit.objects.size() == walking_arrow().objects.size());
    CHECK(strict.limit.morphisms.size() == walking_arrow().morphisms.size());
}

TEST_CASE("slice weight over the elements takes slice values") {
    CatValued2Functor z = point_diagram(walking_arrow());
    CatValued2Functor w = weight_laxn(z);
    REQUIRE(validate(w).pass);
    ElementsResult e = elements_op(z);
    CHECK(w.base == e.total);
    // values are slices of the walking arrow: over "a" one object, over "b" two
    CHECK(w.obj(elements_object_tag("*", "a")).objects.size() == 1);
    CHECK(w.obj(elements_object_tag("*", "b")).objects.size() == 2);
    CHECK(w.obj(elements_object_tag("*", "b")).morphisms.size() == 3);
}

TEST_CASE("coslice weight is the fiber dual of the slice weight") {
    for (const FiniteCategory& d : {walking_arrow(), parallel_pair()}) {
        CatValued2Functor z = point_diagram(d);
        CatValued2Functor w = weight_oplaxn(z);
        REQUIRE(validate(w).pass);
        CHECK(fiber_opposite(w) == weight_laxn(fiber_opposite(z)));
    }
    // values are coslice categories up to the morphism tag convention: the
    // objects coincide literally ("a" sees both arrows out of it)
    CatValued2Functor w = weight_oplaxn(point_diagram(walking_arrow()));
    bool saw_a = false, saw_b = false;
    for (const auto& [tag, val] : w.on_obj) {
        if (val.objects == coslice_category(walking_arrow(), "a").objects &&
            val.morphisms.size() == coslice_category(walking_arrow(), "a").morphisms.size())
            saw_a = true;
        if (val.objects == coslice_category(walking_arrow(), "b").objects &&
            val.morphisms.size() == coslice_category(walking_arrow(), "b").morphisms.size())
            saw_b = true;
    }
    CHECK(saw_a);
    CHECK(saw_b);
}

TEST_CASE("coslice is the opposite of the slice in the opposite up to retagging") {
    // both tag a triangle by its underlying morphism; they differ only in
    // which endpoint object is appended to the tag
    for (const FiniteCategory& c : {walking_arrow(), commutative_square()}) {
        for (const Id& x : c.objects) {
            FiniteCategory cos = coslice_category(c, x);
            FiniteCategory dual = opposite_category(slice_category(opposite_category(c), x));
            CHECK(cos.objects == dual.objects);
            Functor relabel;
            relabel.src = cos;
            relabel.tgt = dual;
            for (const Id& o : cos.objects) relabel.on_obj[o] = o;
            for (const Morphism& m : cos.morphisms) {
                Id gamma = m.id.substr(0, m.id.find('|'));
                relabel.on_mor[m.id] = pair_tag(gamma, m.src);
            }
            CHECK(cat2::kernel::iso_of_categories(relabel).pass);
        }
    }
}

TEST_CASE("weighted limit agrees with the marked conical limit over the elements") {
    CatValued2Functor w = point_diagram(walking_arrow());
    CatValued2Functor f = point_diagram(walking_arrow());
    LimitResult res = conicalization_check(w, f);
    CHECK(res.report.pass);
    // both sides present the functor category [Two, Two]
    CHECK(res.limit.objects.size() == 3);
    CHECK(res.limit.morphisms.size() == 6);
    REQUIRE(res.comparison.has_value());
    CHECK(res.comparison->on_obj.size() == 3);
}

TEST_CASE("conicalization over a one-arrow base") {
    Finite2Category base = locally_discrete(walking_arrow());
    CatValued2Functor w = constant_diagram(base, terminal_category());
    CatValued2Functor f = constant_diagram(base, walking_arrow());
    LimitResult res = conicalization_check(w, f);
    CHECK(res.report.pass);
}

TEST_CASE("slice weight presents the marked conical limit") {
    CatValued2Functor z = point_diagram(walking_arrow());
    ElementsResult e = elements_op(z);
    CatValued2Functor f = constant_diagram(e.total, walking_arrow());
    LimitResult res = weight_laxn_equivalence_check(z, f);
    CHECK(res.report.pass);
    REQUIRE(res.comparison.has_value());
    CHECK(cat2::kernel::iso_of_categories(*res.comparison).pass);
}

TEST_CASE("marked oplax cocylinder category counts") {
    Finite2Category base = locally_discrete(walking_arrow());
    Marking m = chaotic_marking(base);
    Finite2Category dual = dualize(base, DualMode::Op);
    CatValued2Functor w = constant_diagram(dual, terminal_category());
    CatValued2Functor f = constant_diagram(base, terminal_category());
    FiniteCategory cocyl = marked_oplax_cocylinder_category(m, w, f, walking_arrow());
    CHECK(cocyl.objects.size() == 3);
    CHECK(cocyl.morphisms.size() == 6);
}

TEST_CASE("oplax colimit of the point diagram over the walking arrow") {
    Finite2Category base = locally_discrete(walking_arrow());
    Marking m = chaotic_marking(base);
    Finite2Category dual = dualize(base, DualMode::Op);
    CatValued2Functor w = constant_diagram(dual, terminal_category());
    CatValued2Functor f = constant_diagram(base, terminal_category());

    HomDiagram hd = hom_diagram_contra(f, walking_arrow());
    Marking m2{hd.diag.base, m.marked};
    std::vector<Transformation> cocyls =
        enumerate_transformations(w, hd.diag, Flavor::MarkedOplax, m2);
    REQUIRE(cocyls.size() == 3);

    std::size_t certified = 0;
    Transformation winner;
    for (const Transformation& mu : cocyls) {
        ValidationReport r = is_marked_oplax_colimit(m, w, f, walking_arrow(), mu);
        CHECK(!r.notes.empty());
        if (r.pass) {
            ++certified;
            winner = mu;
        }
    }
    // only the tautological cocylinder is universal
    CHECK(certified == 1);
    // it is not constant: its two components pick distinct objects
    CHECK(winner.at("a").on_obj.at("*") != winner.at("b").on_obj.at("*"));
}

TEST_CASE("a point candidate fails the arrow probe") {
    Finite2Category base = locally_discrete(walking_arrow());
    Marking m = chaotic_marking(base);
    Finite2Category dual = dualize(base, DualMode::Op);
    CatValued2Functor w = constant_diagram(dual, terminal_category());
    CatValued2Functor f = constant_diagram(base, terminal_category());

    HomDiagram hd = hom_diagram_contra(f, terminal_category());
    Marking m2{hd.diag.base, m.marked};
    std::vector<Transformation> cocyls =
        enumerate_transformations(w, hd.diag, Flavor::MarkedOplax, m2);
    REQUIRE(cocyls.size() == 1);

    ValidationReport r = is_marked_oplax_colimit(m, w, f, terminal_category(), cocyls[0]);
    CHECK(!r.pass);
    bool arrow_probe_failed = false;
    for (const Violation& v : r.violations)
        if (v.law.rfind("probe-1/", 0) == 0) arrow_probe_failed = true;
    CHECK(arrow_probe_failed);
    // the recorded counts show 2 candidate-side objects against 3 cocylinders
    bool counted = false;
    for (const std::string& n : r.notes)
        if (n.rfind("probe-1:", 0) == 0 &&
            n.find("2 objects") != std::string::npos &&
            n.find("3 objects") != std::string::npos)
            counted = true;
    CHECK(counted);
}
