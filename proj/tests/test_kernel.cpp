#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cat2/kernel.hpp"

using namespace cat2::kernel;

TEST_CASE("builders validate") {
    CHECK(validate(terminal_category()).pass);
    CHECK(validate(walking_arrow()).pass);
    CHECK(validate(walking_iso()).pass);
    CHECK(validate(discrete_category({"x", "y", "z"})).pass);
    CHECK(validate(composable_pair()).pass);
    CHECK(validate(commutative_square()).pass);
    CHECK(validate(parallel_pair()).pass);
}

TEST_CASE("missing composite is caught with its witness") {
    FiniteCategory c = walking_arrow();
    c.composition.erase({"f", id_tag("a")});
    ValidationReport r = validate(c);
    CHECK(!r.pass);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].law == "composition-total");
    CHECK(r.violations[0].witness == std::vector<Id>{"f", id_tag("a")});
}

TEST_CASE("broken associativity is caught") {
    // free presentation a->b->c with a second arrow a->c, composition bent to it
    FiniteCategory c = composable_pair();
    c.add_morphism("h", "a", "c");
    c.composition[{"h", id_tag("a")}] = "h";
    c.composition[{id_tag("c"), "h"}] = "h";
    c.normalize();
    CHECK(validate(c).pass);
    c.composition[{"g", "f"}] = "h";
    c.composition[{"gf", id_tag("a")}] = "h";  // break the unit law instead
    ValidationReport r = validate(c);
    CHECK(!r.pass);
    CHECK(r.violations[0].law == "unit-law");
}

TEST_CASE("walking iso has invertible f") {
    FiniteCategory c = walking_iso();
    CHECK(c.is_iso("f"));
    CHECK(c.is_iso("g"));
    CHECK(!walking_arrow().is_iso("f"));
}

TEST_CASE("opposite is an involution preserving ids") {
    for (const FiniteCategory& c :
         {walking_arrow(), walking_iso(), composable_pair(), commutative_square()}) {
        FiniteCategory op = opposite_category(c);
        CHECK(validate(op).pass);
        CHECK(opposite_category(op) == c);
        CHECK(op.morphisms.size() == c.morphisms.size());
        if (c.find_morphism("f")) CHECK(op.src("f") == c.tgt("f"));
    }
}

TEST_CASE("product category") {
    FiniteCategory p = product_category(walking_arrow(), walking_arrow());
    CHECK(validate(p).pass);
    CHECK(p.objects.size() == 4);
    CHECK(p.morphisms.size() == 9);
    CHECK(p.has_object("a|b"));
    CHECK(p.src("f|f") == "a|a");
    CHECK(p.tgt("f|f") == "b|b");
}

TEST_CASE("slice and coslice of the walking arrow") {
    FiniteCategory c = walking_arrow();
    FiniteCategory sb = slice_category(c, "b");
    CHECK(validate(sb).pass);
    // objects: f and id:b; one non-identity morphism f -> id:b
    CHECK(sb.objects.size() == 2);
    CHECK(sb.morphisms.size() == 3);
    FiniteCategory sa = slice_category(c, "a");
    CHECK(sa.objects.size() == 1);

    FiniteCategory ca = coslice_category(c, "a");
    CHECK(validate(ca).pass);
    CHECK(ca.objects.size() == 2);
    CHECK(ca.morphisms.size() == 3);
    FiniteCategory cb = coslice_category(c, "b");
    CHECK(cb.objects.size() == 1);
}

TEST_CASE("functor validation and composition") {
    FiniteCategory two = walking_arrow();
    FiniteCategory one = terminal_category();
    Functor bang;
    bang.src = two;
    bang.tgt = one;
    for (const Id& x : two.objects) bang.on_obj[x] = "*";
    for (const Morphism& m : two.morphisms) bang.on_mor[m.id] = id_tag("*");
    CHECK(validate(bang).pass);

    Functor idf = identity_functor(two);
    CHECK(validate(idf).pass);
    CHECK(compose_functors(bang, idf) == bang);

    Functor bad = idf;
    bad.on_mor["f"] = id_tag("a");
    ValidationReport r = validate(bad);
    CHECK(!r.pass);
    CHECK(r.violations[0].law == "functor-endpoints");
}

TEST_CASE("natural transformations over the walking arrow") {
    FiniteCategory two = walking_arrow();
    // constant functors at a and b, the arrow gives the unique component choice
    auto constant = [&](const Id& x) {
        Functor f;
        f.src = f.tgt = two;
        for (const Id& o : two.objects) f.on_obj[o] = x;
        for (const Morphism& m : two.morphisms) f.on_mor[m.id] = id_tag(x);
        return f;
    };
    Functor ca = constant("a"), cb = constant("b");
    auto ts = enumerate_nat_trans(ca, cb);
    REQUIRE(ts.size() == 1);
    CHECK(validate(ts[0]).pass);
    CHECK(ts[0].at("a") == "f");
    CHECK(enumerate_nat_trans(cb, ca).empty());
    CHECK(nat_invertible(identity_nat(ca)));
    CHECK(!nat_invertible(ts[0]));
}

TEST_CASE("enumerate_functors counts") {
    FiniteCategory one = terminal_category();
    FiniteCategory two = walking_arrow();
    CHECK(enumerate_functors(one, two).size() == 2);
    // [Two,Two]: order endomorphisms of the 2-chain
    CHECK(enumerate_functors(two, two).size() == 3);
    CHECK(enumerate_functors(two, one).size() == 1);
    CHECK(enumerate_functors(parallel_pair(), two).size() == 3);
}

TEST_CASE("functor category [Two,Two] is the known 3-object category") {
    FiniteCategory fc = functor_category(walking_arrow(), walking_arrow());
    CHECK(validate(fc).pass);
    CHECK(fc.objects.size() == 3);
    CHECK(fc.morphisms.size() == 6);
}

TEST_CASE("iso_of_categories detects collisions and misses") {
    FiniteCategory two = walking_arrow();
    CHECK(iso_of_categories(identity_functor(two)).pass);

    Functor bang;
    bang.src = two;
    bang.tgt = terminal_category();
    for (const Id& x : two.objects) bang.on_obj[x] = "*";
    for (const Morphism& m : two.morphisms) bang.on_mor[m.id] = id_tag("*");
    ValidationReport r = iso_of_categories(bang);
    CHECK(!r.pass);
    bool saw_obj_collision = false, saw_mor_collision = false;
    for (const auto& v : r.violations) {
        saw_obj_collision |= v.law == "iso-object-collision";
        saw_mor_collision |= v.law == "iso-morphism-collision";
    }
    CHECK(saw_obj_collision);
    CHECK(saw_mor_collision);

    Functor pick_a;
    pick_a.src = terminal_category();
    pick_a.tgt = two;
    pick_a.on_obj["*"] = "a";
    pick_a.on_mor[id_tag("*")] = id_tag("a");
    ValidationReport r2 = iso_of_categories(pick_a);
    CHECK(!r2.pass);
    bool saw_not_hit = false;
    for (const auto& v : r2.violations) saw_not_hit |= v.law == "iso-object-not-hit";
    CHECK(saw_not_hit);
}

TEST_CASE("locally discrete 2-categories validate") {
    for (const FiniteCategory& c :
         {terminal_category(), walking_arrow(), composable_pair(), commutative_square()}) {
        Finite2Category k = locally_discrete(c);
        CHECK(validate(k).pass);
        CHECK(underlying_category(k) == c);
    }
}

TEST_CASE("walking 2-cell validates and dualizes") {
    Finite2Category k = walking_2cell();
    CHECK(validate(k).pass);
    CHECK(k.all_1cells().size() == 4);
    CHECK(k.all_2cells().size() == 5);

    for (DualMode m : {DualMode::Op, DualMode::Co, DualMode::Coop}) {
        Finite2Category d = dualize(k, m);
        CHECK(validate(d).pass);
        CHECK(dualize(d, m) == k);
    }
    // co reverses the 2-cell
    Finite2Category co = dualize(k, DualMode::Co);
    CHECK(co.vsrc("al") == k.vtgt("al"));
    // op swaps 1-cell endpoints
    Finite2Category op = dualize(k, DualMode::Op);
    CHECK(op.src1("f") == "b");
    // op then co equals coop
    CHECK(dualize(dualize(k, DualMode::Op), DualMode::Co) == dualize(k, DualMode::Coop));
}

TEST_CASE("2-category validation catches a broken interchange table") {
    Finite2Category k = walking_2cell();
    k.hcomp2[{"al", id_tag("1:a")}] = id_tag("f");
    ValidationReport r = validate(k);
    CHECK(!r.pass);
}

TEST_CASE("2-functors into the walking 2-cell") {
    Finite2Category k = walking_2cell();
    TwoFunctor idf = identity_two_functor(k);
    CHECK(validate(idf).pass);
    CHECK(compose_two_functors(idf, idf) == idf);

    Finite2Category one = terminal_2category();
    // collapse everything
    auto fs = enumerate_two_functors(k, one);
    REQUIRE(fs.size() == 1);
    CHECK(validate(fs[0]).pass);
    // 2-functors One -> walking 2-cell pick an object
    CHECK(enumerate_two_functors(one, k).size() == 2);

    Functor u = underlying_functor(idf);
    CHECK(validate(u).pass);

    for (DualMode m : {DualMode::Op, DualMode::Co, DualMode::Coop})
        CHECK(validate(dualize(idf, m)).pass);
}

TEST_CASE("enumerate_two_functors between locally discrete bases") {
    Finite2Category two = locally_discrete(walking_arrow());
    Finite2Category one = terminal_2category();
    CHECK(enumerate_two_functors(one, two).size() == 2);
    CHECK(enumerate_two_functors(two, two).size() == 3);
}

TEST_CASE("candidate cap raises SizeExceeded") {
    Limits tiny;
    tiny.max_candidates = 2;
    CHECK_THROWS_AS(enumerate_functors(walking_arrow(), commutative_square(), tiny),
                    SizeExceeded);
}
