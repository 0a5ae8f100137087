#include "cat2/kan.hpp"

#include <functional>

namespace cat2::kan {

namespace {

template <typename M, typename K>
const auto& lookup(const M& m, const K& k, const char* what) {
    auto it = m.find(k);
    if (it == m.end()) throw DanglingReference(std::string("two-variable data missing ") + what);
    return it->second;
}

void merge_prefixed(ValidationReport& r, ValidationReport sub, const std::string& prefix) {
    for (Violation& v : sub.violations) v.law = prefix + v.law;
    r.merge(std::move(sub));
}

}  // namespace

const FiniteCategory& TwoVarCatFunctor::obj(const Id& e, const Id& a) const {
    return lookup(on_obj, std::pair<Id, Id>{e, a}, "object value");
}
const Functor& TwoVarCatFunctor::b1(const Id& c, const Id& a) const {
    return lookup(on1_b, std::pair<Id, Id>{c, a}, "first-variable 1-cell action");
}
const Functor& TwoVarCatFunctor::c1(const Id& e, const Id& u) const {
    return lookup(on1_c, std::pair<Id, Id>{e, u}, "second-variable 1-cell action");
}
const NaturalTransformation& TwoVarCatFunctor::b2(const Id& d, const Id& a) const {
    return lookup(on2_b, std::pair<Id, Id>{d, a}, "first-variable 2-cell action");
}
const NaturalTransformation& TwoVarCatFunctor::c2(const Id& e, const Id& t) const {
    return lookup(on2_c, std::pair<Id, Id>{e, t}, "second-variable 2-cell action");
}

CatValued2Functor slice_b(const TwoVarCatFunctor& f, const Id& a) {
    CatValued2Functor d;
    d.base = dualize(f.base_b, DualMode::Op);
    for (const Id& e : f.base_b.objects) d.on_obj[e] = f.obj(e, a);
    for (const Id& c : f.base_b.all_1cells()) d.on1[c] = f.b1(c, a);
    for (const Id& x : f.base_b.all_2cells()) d.on2[x] = f.b2(x, a);
    return d;
}

CatValued2Functor slice_c(const TwoVarCatFunctor& f, const Id& e) {
    CatValued2Functor d;
    d.base = f.base_c;
    for (const Id& a : f.base_c.objects) d.on_obj[a] = f.obj(e, a);
    for (const Id& u : f.base_c.all_1cells()) d.on1[u] = f.c1(e, u);
    for (const Id& x : f.base_c.all_2cells()) d.on2[x] = f.c2(e, x);
    return d;
}

ValidationReport validate(const TwoVarCatFunctor& f) {
    ValidationReport r;
    for (const Id& a : f.base_c.objects)
        merge_prefixed(r, diagrams::validate(slice_b(f, a)), "b[" + a + "]/");
    for (const Id& e : f.base_b.objects)
        merge_prefixed(r, diagrams::validate(slice_c(f, e)), "c[" + e + "]/");
    if (!r.pass) return r;
    for (const Id& c : f.base_b.all_1cells()) {
        auto [e, e2] = f.base_b.cell1_home(c);
        for (const Id& u : f.base_c.all_1cells()) {
            auto [a, a2] = f.base_c.cell1_home(u);
            if (!(compose_functors(f.c1(e, u), f.b1(c, a)) ==
                  compose_functors(f.b1(c, a2), f.c1(e2, u))))
                r.fail("interchange-square", {c, u});
        }
        for (const Id& t : f.base_c.all_2cells()) {
            auto [a, a2] = f.base_c.cell2_home(t);
            if (whisker_pre(f.c2(e, t), f.b1(c, a)).component !=
                whisker_post(f.b1(c, a2), f.c2(e2, t)).component)
                r.fail("interchange-second-2cell", {c, t});
        }
    }
    for (const Id& d : f.base_b.all_2cells()) {
        auto [e, e2] = f.base_b.cell2_home(d);
        for (const Id& u : f.base_c.all_1cells()) {
            auto [a, a2] = f.base_c.cell1_home(u);
            if (whisker_post(f.c1(e, u), f.b2(d, a)).component !=
                whisker_pre(f.b2(d, a2), f.c1(e2, u)).component)
                r.fail("interchange-first-2cell", {d, u});
        }
    }
    return r;
}

TwoVarCatFunctor hom_two_var(const TwoFunctor& k) {
    TwoVarCatFunctor f;
    f.base_b = k.src;
    f.base_c = k.tgt;
    const Finite2Category& a2 = k.tgt;
    for (const Id& e : k.src.objects)
        for (const Id& a : a2.objects) f.on_obj[{e, a}] = a2.hom_at(k.obj(e), a);
    for (const Id& c : k.src.all_1cells()) {
        auto [e, e2] = k.src.cell1_home(c);
        Id kc = k.cell1(c);
        for (const Id& a : a2.objects) {
            Functor p;
            p.src = f.obj(e2, a);
            p.tgt = f.obj(e, a);
            for (const Id& u : p.src.objects) p.on_obj[u] = a2.hcomp_1(u, kc);
            for (const Morphism& t : p.src.morphisms)
                p.on_mor[t.id] = a2.hcomp_2(t.id, a2.id2(kc));
            f.on1_b[{c, a}] = std::move(p);
        }
    }
    for (const Id& e : k.src.objects) {
        Id ke = k.obj(e);
        for (const Id& u : a2.all_1cells()) {
            auto [a, a2o] = a2.cell1_home(u);
            Functor p;
            p.src = f.obj(e, a);
            p.tgt = f.obj(e, a2o);
            for (const Id& v : p.src.objects) p.on_obj[v] = a2.hcomp_1(u, v);
            for (const Morphism& t : p.src.morphisms)
                p.on_mor[t.id] = a2.hcomp_2(a2.id2(u), t.id);
            f.on1_c[{e, u}] = std::move(p);
        }
    }
    for (const Id& d : k.src.all_2cells()) {
        auto [e, e2] = k.src.cell2_home(d);
        Id c = k.src.vsrc(d), c2 = k.src.vtgt(d);
        for (const Id& a : a2.objects) {
            NaturalTransformation n;
            n.src = f.b1(c, a);
            n.tgt = f.b1(c2, a);
            for (const Id& u : n.src.src.objects)
                n.component[u] = a2.hcomp_2(a2.id2(u), k.cell2(d));
            f.on2_b[{d, a}] = std::move(n);
        }
    }
    for (const Id& e : k.src.objects)
        for (const Id& t : a2.all_2cells()) {
            Id u = a2.vsrc(t), u2 = a2.vtgt(t);
            NaturalTransformation n;
            n.src = f.c1(e, u);
            n.tgt = f.c1(e, u2);
            for (const Id& v : n.src.src.objects)
                n.component[v] = a2.hcomp_2(t, a2.id2(v));
            f.on2_c[{e, t}] = std::move(n);
        }
    return f;
}

TwoVarCatFunctor two_var_from_diagram(const Finite2Category& b, const CatValued2Functor& g) {
    TwoVarCatFunctor f;
    f.base_b = b;
    f.base_c = g.base;
    for (const Id& e : b.objects)
        for (const Id& a : g.base.objects) f.on_obj[{e, a}] = g.obj(a);
    for (const Id& c : b.all_1cells()) {
        auto [e, e2] = b.cell1_home(c);
        (void)e;
        (void)e2;
        for (const Id& a : g.base.objects) f.on1_b[{c, a}] = identity_functor(g.obj(a));
    }
    for (const Id& e : b.objects)
        for (const Id& u : g.base.all_1cells()) f.on1_c[{e, u}] = g.cell1(u);
    for (const Id& d : b.all_2cells()) {
        auto [e, e2] = b.cell2_home(d);
        Id c = b.vsrc(d);
        (void)e;
        (void)e2;
        (void)c;
        for (const Id& a : g.base.objects)
            f.on2_b[{d, a}] = identity_nat(identity_functor(g.obj(a)));
    }
    for (const Id& e : b.objects)
        for (const Id& t : g.base.all_2cells()) f.on2_c[{e, t}] = g.cell2(t);
    return f;
}

// ---------------------------------------------------------------------------
// Two-variable transformations

const Functor& TwoVarTransformation::at(const Id& e, const Id& a) const {
    return lookup(component, std::pair<Id, Id>{e, a}, "component");
}
const NaturalTransformation& TwoVarTransformation::str_b(const Id& c, const Id& a) const {
    return lookup(structure_b, std::pair<Id, Id>{c, a}, "first-variable structure");
}
const NaturalTransformation& TwoVarTransformation::str_c(const Id& e, const Id& u) const {
    return lookup(structure_c, std::pair<Id, Id>{e, u}, "second-variable structure");
}
const NaturalTransformation& TwoVarModification::at(const Id& e, const Id& a) const {
    return lookup(component, std::pair<Id, Id>{e, a}, "modification component");
}

namespace {

Transformation slice_trans_b(const TwoVarTransformation& t, const Id& a) {
    Transformation out;
    out.flavor = Flavor::MarkedOplax;
    out.marking = Marking{dualize(t.marking.carrier, DualMode::Op), t.marking.marked};
    out.src = slice_b(t.src, a);
    out.tgt = slice_b(t.tgt, a);
    for (const Id& e : t.src.base_b.objects) out.component[e] = t.at(e, a);
    for (const Id& c : t.src.base_b.all_1cells()) out.structure[c] = t.str_b(c, a);
    return out;
}

Transformation slice_trans_c(const TwoVarTransformation& t, const Id& e) {
    Transformation out;
    out.flavor = Flavor::Lax;
    out.src = slice_c(t.src, e);
    out.tgt = slice_c(t.tgt, e);
    for (const Id& a : t.src.base_c.objects) out.component[a] = t.at(e, a);
    for (const Id& u : t.src.base_c.all_1cells()) out.structure[u] = t.str_c(e, u);
    return out;
}

}  // namespace

ValidationReport check_two_var(const TwoVarTransformation& t) {
    ValidationReport r;
    if (!(t.src.base_b == t.tgt.base_b) || !(t.src.base_c == t.tgt.base_c) ||
        !(t.marking.carrier == t.src.base_b)) {
        r.fail("shape", {});
        return r;
    }
    for (const Id& a : t.src.base_c.objects)
        merge_prefixed(r, check_transformation(slice_trans_b(t, a)), "b[" + a + "]/");
    for (const Id& e : t.src.base_b.objects)
        merge_prefixed(r, check_transformation(slice_trans_c(t, e)), "c[" + e + "]/");
    if (!r.pass) return r;
    for (const Id& c : t.src.base_b.all_1cells()) {
        auto [e, e2] = t.src.base_b.cell1_home(c);
        for (const Id& u : t.src.base_c.all_1cells()) {
            auto [a, a2] = t.src.base_c.cell1_home(u);
            NaturalTransformation path_a = kernel::vcompose(
                whisker_post(t.tgt.b1(c, a2), t.str_c(e2, u)),
                whisker_post(t.tgt.c1(e, u), t.str_b(c, a)));
            NaturalTransformation path_b = kernel::vcompose(
                whisker_pre(t.str_b(c, a2), t.src.c1(e2, u)),
                whisker_pre(t.str_c(e, u), t.src.b1(c, a)));
            if (path_a.component != path_b.component) r.fail("compatibility", {c, u});
        }
    }
    return r;
}

ValidationReport check_two_var(const TwoVarModification& m) {
    ValidationReport r;
    for (const Id& a : m.src.src.base_c.objects) {
        Modification slice;
        slice.src = slice_trans_b(m.src, a);
        slice.tgt = slice_trans_b(m.tgt, a);
        for (const Id& e : m.src.src.base_b.objects) slice.component[e] = m.at(e, a);
        merge_prefixed(r, check_modification(slice), "b[" + a + "]/");
    }
    for (const Id& e : m.src.src.base_b.objects) {
        Modification slice;
        slice.src = slice_trans_c(m.src, e);
        slice.tgt = slice_trans_c(m.tgt, e);
        for (const Id& a : m.src.src.base_c.objects) slice.component[a] = m.at(e, a);
        merge_prefixed(r, check_modification(slice), "c[" + e + "]/");
    }
    return r;
}

TwoVarTransformation identity_two_var(const TwoVarCatFunctor& f, const Marking& marking) {
    TwoVarTransformation t;
    t.marking = marking;
    t.src = f;
    t.tgt = f;
    for (const Id& e : f.base_b.objects)
        for (const Id& a : f.base_c.objects)
            t.component[{e, a}] = identity_functor(f.obj(e, a));
    for (const Id& c : f.base_b.all_1cells()) {
        auto [e, e2] = f.base_b.cell1_home(c);
        (void)e2;
        for (const Id& a : f.base_c.objects)
            t.structure_b[{c, a}] =
                identity_nat(compose_functors(t.at(e, a), f.b1(c, a)));
    }
    for (const Id& e : f.base_b.objects)
        for (const Id& u : f.base_c.all_1cells()) {
            auto [a, a2] = f.base_c.cell1_home(u);
            (void)a2;
            t.structure_c[{e, u}] =
                identity_nat(compose_functors(f.c1(e, u), t.at(e, a)));
        }
    return t;
}

// ---------------------------------------------------------------------------
// Extraordinary lax transformations

Marking cleavage_marking(const SplitDiscrete2Opfib& p) {
    Marking m;
    m.carrier = p.k.src;
    for (const auto& [x, u] : p.k.src.unit) m.marked.insert(u);
    for (const auto& [key, lift] : p.cleavage) m.marked.insert(lift);
    return m;
}

ValidationReport check_extraordinary(const ExtraordinaryLaxTransformation& t) {
    ValidationReport r;
    const Finite2Category& b = t.p.k.src;
    if (!(t.f.base_b == b) || !(t.f.base_c == t.p.k.tgt)) {
        r.fail("shape", {});
        return r;
    }
    for (const Id& e : b.objects) {
        auto it = t.component.find(e);
        if (it == t.component.end()) {
            r.fail("component-total", {e});
            continue;
        }
        if (!t.f.obj(e, t.p.k.obj(e)).has_object(it->second))
            r.fail("component-image", {e, it->second});
    }
    if (!r.pass) return r;
    for (const Id& c : b.all_1cells()) {
        auto [e, e2] = b.cell1_home(c);
        auto it = t.structure.find(c);
        if (it == t.structure.end()) {
            r.fail("structure-total", {c});
            continue;
        }
        const FiniteCategory& home = t.f.obj(e, t.p.k.obj(e2));
        const Morphism* mo = home.find_morphism(it->second);
        Id want_src = t.f.c1(e, t.p.k.cell1(c)).obj(t.component.at(e));
        Id want_tgt = t.f.b1(c, t.p.k.obj(e2)).obj(t.component.at(e2));
        if (!mo || mo->src != want_src || mo->tgt != want_tgt) {
            r.fail("structure-shape", {c});
            continue;
        }
        if (b.unit_on(e) == c && e == e2 && !home.is_identity(it->second))
            r.fail("unit-structure", {c});
    }
    if (!r.pass) return r;
    for (const auto& [pair, comp] : b.hcomp1) {
        const Id& c2 = pair.first;
        const Id& c1 = pair.second;
        auto [e, em] = b.cell1_home(c1);
        auto [em2, e2] = b.cell1_home(c2);
        if (em != em2) continue;
        const FiniteCategory& home = t.f.obj(e, t.p.k.obj(e2));
        Id expected = home.compose(t.f.b1(c1, t.p.k.obj(e2)).mor(t.structure.at(c2)),
                                   t.f.c1(e, t.p.k.cell1(c2)).mor(t.structure.at(c1)));
        if (t.structure.at(comp) != expected) r.fail("composition-structure", {c2, c1});
    }
    for (const Id& d : b.all_2cells()) {
        auto [e, e2] = b.cell2_home(d);
        if (b.hom_at(e, e2).is_identity(d)) continue;
        Id c = b.vsrc(d), c2 = b.vtgt(d);
        const FiniteCategory& home = t.f.obj(e, t.p.k.obj(e2));
        Id lhs = home.compose(t.structure.at(c2),
                              t.f.c2(e, t.p.k.cell2(d)).at(t.component.at(e)));
        Id rhs = home.compose(t.f.b2(d, t.p.k.obj(e2)).at(t.component.at(e2)),
                              t.structure.at(c));
        if (lhs != rhs) r.fail("two-cell-structure", {d});
    }
    return r;
}

ValidationReport check_extraordinary(const ExtraordinaryModification& m) {
    ValidationReport r;
    if (!(m.src.p == m.tgt.p) || !(m.src.f == m.tgt.f)) {
        r.fail("parallel", {});
        return r;
    }
    const Finite2Category& b = m.src.p.k.src;
    const TwoVarCatFunctor& f = m.src.f;
    for (const Id& e : b.objects) {
        auto it = m.component.find(e);
        if (it == m.component.end()) {
            r.fail("component-total", {e});
            continue;
        }
        const FiniteCategory& home = f.obj(e, m.src.p.k.obj(e));
        const Morphism* mo = home.find_morphism(it->second);
        if (!mo || mo->src != m.src.component.at(e) || mo->tgt != m.tgt.component.at(e))
            r.fail("component-shape", {e});
    }
    if (!r.pass) return r;
    for (const Id& c : b.all_1cells()) {
        auto [e, e2] = b.cell1_home(c);
        const FiniteCategory& home = f.obj(e, m.src.p.k.obj(e2));
        Id lhs = home.compose(m.tgt.structure.at(c),
                              f.c1(e, m.src.p.k.cell1(c)).mor(m.component.at(e)));
        Id rhs = home.compose(f.b1(c, m.src.p.k.obj(e2)).mor(m.component.at(e2)),
                              m.src.structure.at(c));
        if (lhs != rhs) r.fail("modification-axiom", {c});
    }
    return r;
}

std::vector<ExtraordinaryLaxTransformation> enumerate_extraordinary(
    const SplitDiscrete2Opfib& p, const TwoVarCatFunctor& f, const Limits& limits) {
    const Finite2Category& b = p.k.src;
    std::vector<Id> objs = b.objects;
    std::vector<Id> cells;
    std::set<Id> units;
    for (const auto& [x, u] : b.unit) units.insert(u);
    for (const Id& c : b.all_1cells())
        if (!units.count(c)) cells.push_back(c);

    ExtraordinaryLaxTransformation t;
    t.p = p;
    t.f = f;
    std::vector<ExtraordinaryLaxTransformation> out;
    std::size_t nodes = 0;

    std::function<void(std::size_t)> choose_structure = [&](std::size_t i) {
        if (++nodes > limits.max_candidates)
            throw SizeExceeded("extraordinary enumeration exceeded candidate cap");
        if (i == cells.size()) {
            if (check_extraordinary(t).pass) out.push_back(t);
            return;
        }
        const Id& c = cells[i];
        auto [e, e2] = b.cell1_home(c);
        const FiniteCategory& home = f.obj(e, p.k.obj(e2));
        Id s = f.c1(e, p.k.cell1(c)).obj(t.component.at(e));
        Id g = f.b1(c, p.k.obj(e2)).obj(t.component.at(e2));
        for (const Id& mo : home.hom(s, g)) {
            t.structure[c] = mo;
            choose_structure(i + 1);
            t.structure.erase(c);
        }
    };
    std::function<void(std::size_t)> choose_component = [&](std::size_t i) {
        if (++nodes > limits.max_candidates)
            throw SizeExceeded("extraordinary enumeration exceeded candidate cap");
        if (i == objs.size()) {
            for (const Id& e : objs) {
                Id u = b.unit_on(e);
                t.structure[u] =
                    f.obj(e, p.k.obj(e)).id_on(t.component.at(e));
            }
            choose_structure(0);
            for (const Id& e : objs) t.structure.erase(b.unit_on(e));
            return;
        }
        for (const Id& x : f.obj(objs[i], p.k.obj(objs[i])).objects) {
            t.component[objs[i]] = x;
            choose_component(i + 1);
            t.component.erase(objs[i]);
        }
    };
    choose_component(0);
    return out;
}

// ---------------------------------------------------------------------------
// The bijection

ExtraordinaryLaxTransformation yoneda_to_extraordinary(const TwoVarTransformation& alpha,
                                                       const SplitDiscrete2Opfib& p) {
    const Finite2Category& b = p.k.src;
    const Finite2Category& a2 = p.k.tgt;
    ExtraordinaryLaxTransformation t;
    t.p = p;
    t.f = alpha.tgt;
    for (const Id& e : b.objects)
        t.component[e] = alpha.at(e, p.k.obj(e)).obj(a2.unit_on(p.k.obj(e)));
    for (const Id& c : b.all_1cells()) {
        auto [e, e2] = b.cell1_home(c);
        Id ke2 = p.k.obj(e2);
        Id g = p.k.cell1(c);
        const FiniteCategory& home = t.f.obj(e, ke2);
        t.structure[c] =
            home.compose(alpha.str_b(c, ke2).at(a2.unit_on(ke2)),
                         alpha.str_c(e, g).at(a2.unit_on(p.k.obj(e))));
    }
    return t;
}

ExtraordinaryModification yoneda_to_extraordinary(const TwoVarModification& theta,
                                                  const SplitDiscrete2Opfib& p) {
    ExtraordinaryModification g;
    g.src = yoneda_to_extraordinary(theta.src, p);
    g.tgt = yoneda_to_extraordinary(theta.tgt, p);
    for (const Id& e : p.k.src.objects)
        g.component[e] =
            theta.at(e, p.k.obj(e)).at(p.k.tgt.unit_on(p.k.obj(e)));
    return g;
}

namespace {

// The unique 1-cell c over the unit of a, together with the 2-cell over
// theta from c ∘ lift_u to lift_u2, witnessing the local transport of theta.
std::pair<Id, Id> transport_of(const SplitDiscrete2Opfib& p, const Id& e, const Id& a,
                               const Id& lift_u, const Id& lift_u2, const Id& theta) {
    const Finite2Category& b = p.k.src;
    Id eu = b.tgt1(lift_u);
    Id eu2 = b.tgt1(lift_u2);
    Id unit_a = p.k.tgt.unit_on(a);
    for (const Id& c : b.cells1(eu, eu2)) {
        if (p.k.cell1(c) != unit_a) continue;
        Id composite = b.hcomp_1(c, lift_u);
        for (const Morphism& d : b.hom_at(e, eu2).morphisms) {
            if (d.src != composite || d.tgt != lift_u2) continue;
            if (p.k.cell2(d.id) == theta) return {c, d.id};
        }
    }
    throw DanglingReference("no local transport over 2-cell " + theta);
}

}  // namespace

TwoVarTransformation yoneda_from_extraordinary(const ExtraordinaryLaxTransformation& eta) {
    const SplitDiscrete2Opfib& p = eta.p;
    const Finite2Category& b = p.k.src;
    const Finite2Category& a2 = p.k.tgt;
    const TwoVarCatFunctor& f = eta.f;

    TwoVarTransformation t;
    t.marking = cleavage_marking(p);
    t.src = hom_two_var(p.k);
    t.tgt = f;

    for (const Id& e : b.objects) {
        Id b0 = p.k.obj(e);
        for (const Id& a : a2.objects) {
            Functor comp;
            comp.src = a2.hom_at(b0, a);
            comp.tgt = f.obj(e, a);
            for (const Id& u : comp.src.objects) {
                Id lu = p.lift(e, u);
                comp.on_obj[u] = f.b1(lu, a).obj(eta.component.at(b.tgt1(lu)));
            }
            for (const Morphism& th : comp.src.morphisms) {
                Id lu = p.lift(e, th.src);
                Id lu2 = p.lift(e, th.tgt);
                auto [c, d] = transport_of(p, e, a, lu, lu2, th.id);
                comp.on_mor[th.id] = comp.tgt.compose(
                    f.b2(d, a).at(eta.component.at(b.tgt1(lu2))),
                    f.b1(lu, a).mor(eta.structure.at(c)));
            }
            t.component[{e, a}] = std::move(comp);
        }
    }
    for (const Id& c : b.all_1cells()) {
        auto [e, e2] = b.cell1_home(c);
        Id g = p.k.cell1(c);
        for (const Id& a : a2.objects) {
            NaturalTransformation s;
            s.src = compose_functors(t.at(e, a), t.src.b1(c, a));
            s.tgt = compose_functors(f.b1(c, a), t.at(e2, a));
            for (const Id& w : a2.cells1(p.k.obj(e2), a)) {
                Id lw = p.lift(e2, w);
                Id lwg = p.lift(e, a2.hcomp_1(w, g));
                // the fiber 1-cell closing the square lift(e2,w)∘c = cg∘lift(e,wg)
                Id want = b.hcomp_1(lw, c);
                Id found;
                for (const Id& cg : b.cells1(b.tgt1(lwg), b.tgt1(lw)))
                    if (p.k.cell1(cg) == p.k.tgt.unit_on(a) &&
                        b.hcomp_1(cg, lwg) == want) {
                        found = cg;
                        break;
                    }
                if (found.empty())
                    throw DanglingReference("no fiber comparison for structure at " + c);
                s.component[w] = f.b1(lwg, a).mor(eta.structure.at(found));
            }
            t.structure_b[{c, a}] = std::move(s);
        }
    }
    for (const Id& e : b.objects) {
        Id b0 = p.k.obj(e);
        for (const Id& v : a2.all_1cells()) {
            auto [a, a3] = a2.cell1_home(v);
            NaturalTransformation s;
            s.src = compose_functors(f.c1(e, v), t.at(e, a));
            s.tgt = compose_functors(t.at(e, a3), t.src.c1(e, v));
            for (const Id& u : a2.cells1(b0, a)) {
                Id lu = p.lift(e, u);
                Id cv = p.lift(b.tgt1(lu), v);
                s.component[u] = f.b1(lu, a3).mor(eta.structure.at(cv));
            }
            t.structure_c[{e, v}] = std::move(s);
        }
    }
    return t;
}

TwoVarModification yoneda_from_extraordinary(const ExtraordinaryModification& gamma) {
    const SplitDiscrete2Opfib& p = gamma.src.p;
    const Finite2Category& b = p.k.src;
    TwoVarModification t;
    t.src = yoneda_from_extraordinary(gamma.src);
    t.tgt = yoneda_from_extraordinary(gamma.tgt);
    const TwoVarCatFunctor& f = gamma.src.f;
    for (const Id& e : b.objects)
        for (const Id& a : p.k.tgt.objects) {
            NaturalTransformation n;
            n.src = t.src.at(e, a);
            n.tgt = t.tgt.at(e, a);
            for (const Id& u : n.src.src.objects) {
                Id lu = p.lift(e, u);
                n.component[u] = f.b1(lu, a).mor(gamma.component.at(b.tgt1(lu)));
            }
            t.component[{e, a}] = std::move(n);
        }
    return t;
}

// ---------------------------------------------------------------------------
// Kan extension certification

CatValued2Functor kan_weight(const TwoFunctor& k, const Id& a) {
    return slice_b(hom_two_var(k), a);
}

namespace {

// The cocylinder u |-> l(u) ∘ lam_e out of the Kan weight at a, keyed for
// the cocylinder category into candidate l(a).
Transformation kan_cocylinder(const CatValued2Functor& f, const CatValued2Functor& l,
                              const Transformation& lam, const TwoFunctor& k,
                              const Id& a, const CatValued2Functor& w,
                              const HomDiagram& hdc) {
    Transformation mu;
    mu.flavor = Flavor::MarkedOplax;
    mu.marking = Marking{hdc.diag.base, lam.marking->marked};
    mu.src = w;
    mu.tgt = hdc.diag;
    for (const Id& e : k.src.objects) {
        Functor comp;
        comp.src = w.obj(e);
        comp.tgt = hdc.diag.obj(e);
        for (const Id& u : comp.src.objects)
            comp.on_obj[u] = functor_key(compose_functors(l.cell1(u), lam.at(e)));
        for (const Morphism& th : comp.src.morphisms)
            comp.on_mor[th.id] = nat_key(whisker_pre(l.cell2(th.id), lam.at(e)));
        mu.component[e] = std::move(comp);
    }
    for (const Id& c : k.src.all_1cells()) {
        auto [e1, e2] = k.src.cell1_home(c);
        NaturalTransformation s;
        s.src = compose_functors(mu.at(e1), w.cell1(c));
        s.tgt = compose_functors(hdc.diag.cell1(c), mu.at(e2));
        for (const Id& u : w.obj(e2).objects)
            s.component[u] = nat_key(whisker_post(l.cell1(u), lam.str(c)));
        mu.structure[c] = std::move(s);
    }
    return mu;
}

}  // namespace

KanReport pointwise_kan_check(const SplitDiscrete2Opfib& p, const CatValued2Functor& f,
                              const CatValued2Functor& l, const Transformation& lam,
                              const std::vector<FiniteCategory>& probes,
                              const Limits& limits) {
    KanReport rep;
    if (lam.flavor != Flavor::MarkedLax || !lam.marking) {
        ValidationReport r;
        r.fail("marked-lax-required", {});
        rep.per_object["-"] = std::move(r);
        rep.pass = false;
        return rep;
    }
    const TwoFunctor& k = p.k;
    TwoVarCatFunctor htv = hom_two_var(k);
    for (const Id& a : k.tgt.objects) {
        CatValued2Functor w = slice_b(htv, a);
        HomDiagram hdc = hom_diagram_contra(f, l.obj(a), limits);
        Transformation mu = kan_cocylinder(f, l, lam, k, a, w, hdc);
        ValidationReport r =
            is_marked_oplax_colimit(*lam.marking, w, f, l.obj(a), mu, probes, limits);
        for (const std::string& n : r.notes) rep.per_probe.push_back(a + ": " + n);
        if (!r.pass) rep.pass = false;
        rep.per_object[a] = std::move(r);
    }
    return rep;
}

std::vector<CatValued2Functor> default_u_probes(const CatValued2Functor& l) {
    std::vector<CatValued2Functor> out;
    out.push_back(constant_diagram(l.base, terminal_category()));
    out.push_back(constant_diagram(l.base, walking_arrow()));
    out.push_back(l);
    out.push_back(representable(l.base, l.base.objects.front()));
    return out;
}

KanReport weak_kan_check(const TwoFunctor& k, const CatValued2Functor& f,
                         const CatValued2Functor& l, const Transformation& lam,
                         const std::vector<CatValued2Functor>& probes_u,
                         const Limits& limits) {
    KanReport rep;
    Transformation lam2 = lam;
    std::optional<Marking> marking = lam.marking;
    lam2.flavor = Flavor::Lax;
    lam2.marking.reset();

    for (std::size_t pi = 0; pi < probes_u.size(); ++pi) {
        const CatValued2Functor& u = probes_u[pi];
        std::string pn = "probe-" + std::to_string(pi);
        ValidationReport r;
        HomCategoryResult hl = hom_category_full(l, u, Flavor::Lax, std::nullopt, limits);
        CatValued2Functor uk = precompose(u, k);
        HomCategoryResult hf = hom_category_full(f, uk, Flavor::Lax, std::nullopt, limits);
        rep.per_probe.push_back(pn + ": lax " + std::to_string(hl.cat.objects.size()) +
                                "/" + std::to_string(hl.cat.morphisms.size()) + " vs " +
                                std::to_string(hf.cat.objects.size()) + "/" +
                                std::to_string(hf.cat.morphisms.size()));

        Functor cmp;
        cmp.src = hl.cat;
        cmp.tgt = hf.cat;
        std::map<Id, Transformation> pasted;
        bool ok = true;
        for (const auto& [key, sigma] : hl.objects) {
            Transformation img = vcompose(paste(sigma, k, Side::Pre), lam2);
            Id ik = trans_key(img);
            if (!hf.cat.has_object(ik)) {
                r.fail(pn + "/image-object", {key, ik});
                ok = false;
                continue;
            }
            cmp.on_obj[key] = ik;
            pasted.emplace(key, std::move(img));
        }
        if (ok) {
            for (const auto& [key, mod] : hl.morphisms) {
                Modification img;
                img.src = pasted.at(trans_key(mod.src));
                img.tgt = pasted.at(trans_key(mod.tgt));
                for (const Id& x : k.src.objects)
                    img.component[x] = whisker_pre(mod.at(k.obj(x)), lam2.at(x));
                Id ik = modif_key(img);
                if (!hf.cat.find_morphism(ik)) {
                    r.fail(pn + "/image-morphism", {key, ik});
                    continue;
                }
                cmp.on_mor[key] = ik;
            }
        }
        if (r.pass) {
            ValidationReport iso = iso_of_categories(cmp);
            for (Violation& v : iso.violations) v.law = pn + "/" + v.law;
            r.merge(iso);
        }
        if (r.pass && marking) {
            auto restricted = [&](Flavor outer, Flavor inner, const char* name) {
                FiniteCategory ro = hom_category(l, u, outer, std::nullopt, limits);
                FiniteCategory ri = hom_category(f, uk, inner, marking, limits);
                std::set<Id> image, want(ri.objects.begin(), ri.objects.end());
                for (const Id& o : ro.objects) image.insert(cmp.on_obj.at(o));
                if (image != want)
                    r.fail(pn + std::string("/") + name + "-objects", {});
                std::set<Id> mimage, mwant;
                for (const Morphism& mo : ri.morphisms) mwant.insert(mo.id);
                for (const Morphism& mo : ro.morphisms) mimage.insert(cmp.on_mor.at(mo.id));
                if (mimage != mwant)
                    r.fail(pn + std::string("/") + name + "-morphisms", {});
                rep.per_probe.push_back(pn + ": " + name + " " +
                                        std::to_string(ro.objects.size()) + "/" +
                                        std::to_string(ro.morphisms.size()) + " vs " +
                                        std::to_string(ri.objects.size()) + "/" +
                                        std::to_string(ri.morphisms.size()));
            };
            restricted(Flavor::Strict, Flavor::MarkedLax, "strict");
            restricted(Flavor::Pseudo, Flavor::Sigma, "pseudo");
        }
        if (!r.pass) rep.pass = false;
        rep.per_object[pn] = std::move(r);
    }
    return rep;
}

KanReport lan_delta1_check(const CatValued2Functor& f,
                           const std::vector<FiniteCategory>& probes,
                           const Limits& limits) {
    ElementsResult e = elements_op(f, limits);
    Transformation lam = canonical_lambda(f, e);
    CatValued2Functor d1 = constant_diagram(e.total, terminal_category());
    const TwoFunctor& k = e.opfib.k;

    KanReport rep = pointwise_kan_check(e.opfib, d1, f, lam, probes, limits);

    // solved-form uniqueness: every cocylinder into a probe is the pushforward
    // of the canonical one along exactly one functor out of the fiber value
    TwoVarCatFunctor htv = hom_two_var(k);
    for (const Id& a : k.tgt.objects) {
        CatValued2Functor w = slice_b(htv, a);
        HomDiagram hdc = hom_diagram_contra(d1, f.obj(a), limits);
        Transformation mu = kan_cocylinder(d1, f, lam, k, a, w, hdc);
        for (std::size_t pi = 0; pi < probes.size(); ++pi) {
            const FiniteCategory& probe = probes[pi];
            ValidationReport r;
            HomDiagram hdu = hom_diagram_contra(d1, probe, limits);
            Marking m2{hdu.diag.base, e.marking.marked};
            std::vector<Transformation> sigmas =
                enumerate_transformations(w, hdu.diag, Flavor::MarkedOplax, m2, limits);

            auto push = [&](const Functor& s) {
                Transformation t;
                t.flavor = Flavor::MarkedOplax;
                t.marking = m2;
                t.src = w;
                t.tgt = hdu.diag;
                std::map<Id, Functor> pc;
                for (const Id& x : k.src.objects) {
                    Functor p;
                    p.src = hdc.diag.obj(x);
                    p.tgt = hdu.diag.obj(x);
                    for (const auto& [kk, g] : hdc.obj_of_key.at(x))
                        p.on_obj[kk] = functor_key(compose_functors(s, g));
                    for (const auto& [kk, n] : hdc.mor_of_key.at(x))
                        p.on_mor[kk] = nat_key(whisker_post(s, n));
                    pc[x] = std::move(p);
                }
                for (const Id& x : k.src.objects)
                    t.component[x] = compose_functors(pc.at(x), mu.at(x));
                for (const auto& [key, hcb] : hdc.diag.base.hom)
                    for (const Id& c : hcb.objects)
                        t.structure[c] = whisker_post(pc.at(key.second), mu.str(c));
                return trans_key(t);
            };

            std::vector<Functor> all_s = enumerate_functors(f.obj(a), probe, limits);
            for (const Transformation& sigma : sigmas) {
                // solved form: evaluate at the identity 1-cell and at the
                // fiber 1-cells over the unit
                Functor s;
                s.src = f.obj(a);
                s.tgt = probe;
                Id u0 = k.tgt.unit_on(a);
                for (const Id& x : f.obj(a).objects) {
                    Id tag = elements_object_tag(a, x);
                    s.on_obj[x] =
                        hdu.obj_of_key.at(tag).at(sigma.at(tag).obj(u0)).obj("*");
                }
                for (const Morphism& xi : f.obj(a).morphisms) {
                    Id ctag = elements_1cell_tag(f.base.unit_on(a), xi.id, xi.src);
                    s.on_mor[xi.id] = hdu.mor_of_key.at(elements_object_tag(a, xi.src))
                                          .at(sigma.str(ctag).at(u0))
                                          .component.at("*");
                }
                if (!cat2::kernel::validate(s).pass) {
                    r.fail("solved-functor-invalid", {trans_key(sigma)});
                    continue;
                }
                Id want = trans_key(sigma);
                if (push(s) != want) r.fail("solved-factorization", {want});
                std::size_t count = 0;
                for (const Functor& s2 : all_s)
                    if (push(s2) == want) ++count;
                if (count != 1) r.fail("factorization-uniqueness", {want});
            }
            rep.per_probe.push_back(a + ": probe-" + std::to_string(pi) + " " +
                                    std::to_string(sigmas.size()) +
                                    " cocylinders uniquely factored");
            if (!r.pass) rep.pass = false;
            rep.per_object[a + "/probe-" + std::to_string(pi)] = std::move(r);
        }
    }
    return rep;
}

}  // namespace cat2::kan
