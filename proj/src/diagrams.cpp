#include "cat2/diagrams.hpp"

#include <functional>

namespace cat2::diagrams {

namespace {

bool nat_is_identity(const NaturalTransformation& t) {
    for (const auto& [x, m] : t.component)
        if (!t.src.tgt.is_identity(m)) return false;
    return true;
}

// The horizontal composite of diagram values for a hcomp2 pair: for
// d: g => g' in hom(b,c) and e: f => f' in hom(a,b), F(d ∗ e) must equal
// F(d)·F(f') pasted over F(g)·F(e).
NaturalTransformation hcomp_of_nats(const NaturalTransformation& d,
                                    const NaturalTransformation& e) {
    return kernel::vcompose(whisker_pre(d, e.tgt), whisker_post(d.src, e));
}

std::string serialize_nat_components(const NaturalTransformation& t) {
    std::string out = "{";
    bool first = true;
    for (const auto& [x, m] : t.component) {
        if (!first) out += ",";
        first = false;
        out += x + ">" + m;
    }
    return out + "}";
}

}  // namespace

std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Strict: return "strict";
        case Flavor::Pseudo: return "pseudo";
        case Flavor::Lax: return "lax";
        case Flavor::Oplax: return "oplax";
        case Flavor::MarkedLax: return "marked-lax";
        case Flavor::MarkedOplax: return "marked-oplax";
        case Flavor::Sigma: return "sigma";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Markings

Marking trivial_marking(const Finite2Category& carrier) {
    Marking m;
    m.carrier = carrier;
    for (const Id& f : carrier.all_1cells()) m.marked.insert(f);
    return m;
}

Marking chaotic_marking(const Finite2Category& carrier) {
    Marking m;
    m.carrier = carrier;
    for (const auto& [x, u] : carrier.unit) m.marked.insert(u);
    return m;
}

ValidationReport validate(const Marking& m) {
    ValidationReport r;
    std::set<Id> all;
    for (const Id& f : m.carrier.all_1cells()) all.insert(f);
    for (const Id& f : m.marked)
        if (!all.count(f)) r.fail("marking-carrier", {f});
    for (const auto& [x, u] : m.carrier.unit)
        if (!m.marked.count(u)) r.fail("marking-units", {x, u});
    if (!r.pass) return r;
    for (const auto& [pair, h] : m.carrier.hcomp1)
        if (m.marked.count(pair.first) && m.marked.count(pair.second) && !m.marked.count(h))
            r.fail("marking-closure", {pair.first, pair.second, h});
    return r;
}

// ---------------------------------------------------------------------------
// Diagram validation and builders

ValidationReport validate(const CatValued2Functor& f) {
    ValidationReport r;
    for (const Id& a : f.base.objects) {
        auto it = f.on_obj.find(a);
        if (it == f.on_obj.end()) {
            r.fail("diagram-object-total", {a});
            continue;
        }
        ValidationReport vr = kernel::validate(it->second);
        for (Violation& v : vr.violations) {
            v.law = "value/" + v.law;
            v.witness.insert(v.witness.begin(), a);
        }
        r.merge(vr);
    }
    if (!r.pass) return r;
    for (const auto& [key, h] : f.base.hom)
        for (const Id& c : h.objects) {
            auto it = f.on1.find(c);
            if (it == f.on1.end()) {
                r.fail("diagram-1cell-total", {c});
                continue;
            }
            if (!(it->second.src == f.obj(key.first)) || !(it->second.tgt == f.obj(key.second))) {
                r.fail("diagram-1cell-endpoints", {c});
                continue;
            }
            ValidationReport vr = kernel::validate(it->second);
            for (Violation& v : vr.violations) {
                v.law = "1cell/" + v.law;
                v.witness.insert(v.witness.begin(), c);
            }
            r.merge(vr);
        }
    if (!r.pass) return r;
    for (const auto& [x, u] : f.base.unit)
        if (!(f.cell1(u) == identity_functor(f.obj(x)))) r.fail("diagram-unit", {x, u});
    for (const auto& [pair, h] : f.base.hcomp1)
        if (!(f.cell1(h) == compose_functors(f.cell1(pair.first), f.cell1(pair.second))))
            r.fail("diagram-hcomp1", {pair.first, pair.second});
    if (!r.pass) return r;
    for (const auto& [key, h] : f.base.hom)
        for (const Morphism& m : h.morphisms) {
            auto it = f.on2.find(m.id);
            if (it == f.on2.end()) {
                r.fail("diagram-2cell-total", {m.id});
                continue;
            }
            if (!(it->second.src == f.cell1(m.src)) || !(it->second.tgt == f.cell1(m.tgt))) {
                r.fail("diagram-2cell-endpoints", {m.id});
                continue;
            }
            ValidationReport vr = kernel::validate(it->second);
            for (Violation& v : vr.violations) {
                v.law = "2cell/" + v.law;
                v.witness.insert(v.witness.begin(), m.id);
            }
            r.merge(vr);
        }
    if (!r.pass) return r;
    for (const auto& [key, h] : f.base.hom) {
        for (const Id& c : h.objects)
            if (!(f.cell2(h.id_on(c)) == identity_nat(f.cell1(c))))
                r.fail("diagram-2cell-identity", {c});
        for (const auto& [pair, comp] : h.composition)
            if (!(f.cell2(comp) == kernel::vcompose(f.cell2(pair.first), f.cell2(pair.second))))
                r.fail("diagram-vcomp", {pair.first, pair.second});
    }
    for (const auto& [pair, comp] : f.base.hcomp2)
        if (!(f.cell2(comp) == hcomp_of_nats(f.cell2(pair.first), f.cell2(pair.second))))
            r.fail("diagram-hcomp2", {pair.first, pair.second});
    return r;
}

CatValued2Functor constant_diagram(const Finite2Category& base, const FiniteCategory& d) {
    CatValued2Functor f;
    f.base = base;
    for (const Id& a : base.objects) f.on_obj[a] = d;
    Functor idd = identity_functor(d);
    NaturalTransformation idn = identity_nat(idd);
    for (const Id& c : base.all_1cells()) f.on1[c] = idd;
    for (const Id& x : base.all_2cells()) f.on2[x] = idn;
    return f;
}

CatValued2Functor representable(const Finite2Category& base, const Id& b) {
    CatValued2Functor f;
    f.base = base;
    for (const Id& a : base.objects) f.on_obj[a] = base.hom_at(b, a);
    for (const auto& [key, h] : base.hom)
        for (const Id& g : h.objects) {
            Functor fg;
            fg.src = base.hom_at(b, key.first);
            fg.tgt = base.hom_at(b, key.second);
            for (const Id& u : fg.src.objects) fg.on_obj[u] = base.hcomp_1(g, u);
            for (const Morphism& m : fg.src.morphisms)
                fg.on_mor[m.id] = base.whisker_l(g, m.id);
            f.on1[g] = std::move(fg);
        }
    for (const auto& [key, h] : base.hom)
        for (const Morphism& d : h.morphisms) {
            NaturalTransformation t;
            t.src = f.on1.at(d.src);
            t.tgt = f.on1.at(d.tgt);
            for (const Id& u : base.hom_at(b, key.first).objects)
                t.component[u] = base.whisker_r(d.id, u);
            f.on2[d.id] = std::move(t);
        }
    return f;
}

CatValued2Functor representable_op(const Finite2Category& base, const Id& b) {
    CatValued2Functor f;
    f.base = dualize(base, DualMode::Op);
    for (const Id& a : base.objects) f.on_obj[a] = base.hom_at(a, b);
    for (const auto& [key, h] : base.hom)
        for (const Id& g : h.objects) {
            // g: key.first -> key.second in base, so contravariantly
            // hom(key.second, b) -> hom(key.first, b)
            Functor fg;
            fg.src = base.hom_at(key.second, b);
            fg.tgt = base.hom_at(key.first, b);
            for (const Id& u : fg.src.objects) fg.on_obj[u] = base.hcomp_1(u, g);
            for (const Morphism& m : fg.src.morphisms)
                fg.on_mor[m.id] = base.whisker_r(m.id, g);
            f.on1[g] = std::move(fg);
        }
    for (const auto& [key, h] : base.hom)
        for (const Morphism& d : h.morphisms) {
            NaturalTransformation t;
            t.src = f.on1.at(d.src);
            t.tgt = f.on1.at(d.tgt);
            for (const Id& u : base.hom_at(key.second, b).objects)
                t.component[u] = base.whisker_l(u, d.id);
            f.on2[d.id] = std::move(t);
        }
    return f;
}

CatValued2Functor precompose(const CatValued2Functor& f, const TwoFunctor& k) {
    if (!(k.tgt == f.base)) throw ShapeMismatch("precompose: base mismatch");
    CatValued2Functor g;
    g.base = k.src;
    for (const Id& a : k.src.objects) g.on_obj[a] = f.obj(k.obj(a));
    for (const Id& c : k.src.all_1cells()) g.on1[c] = f.cell1(k.cell1(c));
    for (const Id& d : k.src.all_2cells()) g.on2[d] = f.cell2(k.cell2(d));
    return g;
}

// ---------------------------------------------------------------------------
// Transformation checking

namespace {

// Expected endpoints of the structure cell on f: a -> b.
std::pair<Functor, Functor> structure_shape(const Transformation& t, const Id& f,
                                            const Id& a, const Id& b) {
    Functor lhs = compose_functors(t.tgt.cell1(f), t.at(a));
    Functor rhs = compose_functors(t.at(b), t.src.cell1(f));
    if (flavor_is_oplax(t.flavor)) return {rhs, lhs};
    return {lhs, rhs};
}

// The structure cell forced on g∘f by the composition axiom.
NaturalTransformation pasted_structure(const Transformation& t, const Id& g, const Id& f) {
    if (flavor_is_oplax(t.flavor))
        return kernel::vcompose(whisker_post(t.tgt.cell1(g), t.str(f)),
                                whisker_pre(t.str(g), t.src.cell1(f)));
    return kernel::vcompose(whisker_pre(t.str(g), t.src.cell1(f)),
                            whisker_post(t.tgt.cell1(g), t.str(f)));
}

bool two_dim_axiom_holds(const Transformation& t, const Id& d) {
    const Finite2Category& base = t.src.base;
    auto [a, b] = base.cell2_home(d);
    Id f = base.vsrc(d), g = base.vtgt(d);
    if (flavor_is_oplax(t.flavor)) {
        // (G(d) ∗ t_a) ∘ t_f  =  t_g ∘ (t_b ∗ F(d))
        NaturalTransformation lhs =
            kernel::vcompose(whisker_pre(t.tgt.cell2(d), t.at(a)), t.str(f));
        NaturalTransformation rhs =
            kernel::vcompose(t.str(g), whisker_post(t.at(b), t.src.cell2(d)));
        return lhs.component == rhs.component;
    }
    // t_g ∘ (G(d) ∗ t_a)  =  (t_b ∗ F(d)) ∘ t_f
    NaturalTransformation lhs =
        kernel::vcompose(t.str(g), whisker_pre(t.tgt.cell2(d), t.at(a)));
    NaturalTransformation rhs =
        kernel::vcompose(whisker_post(t.at(b), t.src.cell2(d)), t.str(f));
    return lhs.component == rhs.component;
}

bool flavor_ok(const Transformation& t, const Id& f, const NaturalTransformation& s) {
    switch (t.flavor) {
        case Flavor::Strict: return nat_is_identity(s);
        case Flavor::Pseudo: return nat_invertible(s);
        case Flavor::Lax:
        case Flavor::Oplax: return true;
        case Flavor::MarkedLax:
        case Flavor::MarkedOplax:
            return !t.marking->is_marked(f) || nat_is_identity(s);
        case Flavor::Sigma: return !t.marking->is_marked(f) || nat_invertible(s);
    }
    return false;
}

}  // namespace

ValidationReport check_transformation(const Transformation& t) {
    if (flavor_uses_marking(t.flavor) != t.marking.has_value())
        throw FlavorMismatch("marking presence does not match flavor " +
                             flavor_name(t.flavor));
    ValidationReport r;
    if (!(t.src.base == t.tgt.base)) {
        r.fail("parallel", {});
        return r;
    }
    if (t.marking && !(t.marking->carrier == t.src.base)) {
        r.fail("marking-carrier", {});
        return r;
    }
    const Finite2Category& base = t.src.base;
    for (const Id& a : base.objects) {
        auto it = t.component.find(a);
        if (it == t.component.end()) {
            r.fail("component-total", {a});
            continue;
        }
        if (!(it->second.src == t.src.obj(a)) || !(it->second.tgt == t.tgt.obj(a))) {
            r.fail("component-shape", {a});
            continue;
        }
        ValidationReport vr = kernel::validate(it->second);
        for (Violation& v : vr.violations) {
            v.law = "component/" + v.law;
            v.witness.insert(v.witness.begin(), a);
        }
        r.merge(vr);
    }
    if (!r.pass) return r;
    for (const auto& [key, h] : base.hom)
        for (const Id& f : h.objects) {
            auto it = t.structure.find(f);
            if (it == t.structure.end()) {
                r.fail("structure-total", {f});
                continue;
            }
            auto [s0, s1] = structure_shape(t, f, key.first, key.second);
            if (!(it->second.src == s0) || !(it->second.tgt == s1)) {
                r.fail("structure-shape", {f});
                continue;
            }
            ValidationReport vr = kernel::validate(it->second);
            for (Violation& v : vr.violations) {
                v.law = "structure/" + v.law;
                v.witness.insert(v.witness.begin(), f);
            }
            r.merge(vr);
            if (!flavor_ok(t, f, it->second)) r.fail("flavor-structure", {f});
        }
    if (!r.pass) return r;
    for (const auto& [x, u] : base.unit)
        if (!nat_is_identity(t.str(u))) r.fail("unit-structure", {x, u});
    for (const auto& [pair, h] : base.hcomp1)
        if (t.str(h).component != pasted_structure(t, pair.first, pair.second).component)
            r.fail("composition-structure", {pair.first, pair.second, h});
    for (const Id& d : base.all_2cells()) {
        auto [a, b] = base.cell2_home(d);
        if (base.hom_at(a, b).is_identity(d)) continue;
        if (!two_dim_axiom_holds(t, d)) r.fail("two-dim", {d});
    }
    return r;
}

ValidationReport check_modification(const Modification& m) {
    ValidationReport r;
    if (!(m.src.src == m.tgt.src) || !(m.src.tgt == m.tgt.tgt) ||
        m.src.flavor != m.tgt.flavor) {
        r.fail("parallel", {});
        return r;
    }
    const Finite2Category& base = m.src.src.base;
    for (const Id& a : base.objects) {
        auto it = m.component.find(a);
        if (it == m.component.end()) {
            r.fail("component-total", {a});
            continue;
        }
        if (!(it->second.src == m.src.at(a)) || !(it->second.tgt == m.tgt.at(a))) {
            r.fail("component-shape", {a});
            continue;
        }
        ValidationReport vr = kernel::validate(it->second);
        for (Violation& v : vr.violations) {
            v.law = "component/" + v.law;
            v.witness.insert(v.witness.begin(), a);
        }
        r.merge(vr);
    }
    if (!r.pass) return r;
    const CatValued2Functor& F = m.src.src;
    const CatValued2Functor& G = m.src.tgt;
    for (const auto& [key, h] : base.hom)
        for (const Id& f : h.objects) {
            auto [a, b] = key;
            NaturalTransformation lhs, rhs;
            if (flavor_is_oplax(m.src.flavor)) {
                // (G(f) ∗ Θ_a) ∘ φ_f  =  ψ_f ∘ (Θ_b ∗ F(f))
                lhs = kernel::vcompose(whisker_post(G.cell1(f), m.at(a)), m.src.str(f));
                rhs = kernel::vcompose(m.tgt.str(f), whisker_pre(m.at(b), F.cell1(f)));
            } else {
                // (Θ_b ∗ F(f)) ∘ φ_f  =  ψ_f ∘ (G(f) ∗ Θ_a)
                lhs = kernel::vcompose(whisker_pre(m.at(b), F.cell1(f)), m.src.str(f));
                rhs = kernel::vcompose(m.tgt.str(f), whisker_post(G.cell1(f), m.at(a)));
            }
            if (lhs.component != rhs.component) r.fail("modification-axiom", {f});
        }
    return r;
}

// ---------------------------------------------------------------------------
// Identities and composition

Transformation identity_transformation(const CatValued2Functor& f, Flavor flavor,
                                       std::optional<Marking> marking) {
    Transformation t;
    t.flavor = flavor;
    t.marking = std::move(marking);
    t.src = t.tgt = f;
    for (const Id& a : f.base.objects) t.component[a] = identity_functor(f.obj(a));
    for (const Id& c : f.base.all_1cells())
        t.structure[c] = identity_nat(f.cell1(c));
    return t;
}

Modification identity_modification(const Transformation& t) {
    Modification m;
    m.src = m.tgt = t;
    for (const auto& [a, comp] : t.component) m.component[a] = identity_nat(comp);
    return m;
}

namespace {

int flavor_rank(Flavor f) {
    switch (f) {
        case Flavor::Strict: return 0;
        case Flavor::Pseudo: return 1;
        case Flavor::MarkedLax:
        case Flavor::MarkedOplax: return 2;
        case Flavor::Sigma: return 2;
        case Flavor::Lax:
        case Flavor::Oplax: return 3;
    }
    return 3;
}

// The weakest common flavor of two composable transformations.
std::pair<Flavor, std::optional<Marking>> combine_flavors(const Transformation& b,
                                                          const Transformation& a) {
    bool bo = flavor_is_oplax(b.flavor), ao = flavor_is_oplax(a.flavor);
    bool bl = b.flavor == Flavor::Lax || b.flavor == Flavor::MarkedLax ||
              b.flavor == Flavor::Sigma;
    bool al = a.flavor == Flavor::Lax || a.flavor == Flavor::MarkedLax ||
              a.flavor == Flavor::Sigma;
    if ((bo && al) || (ao && bl))
        throw ShapeMismatch("cannot compose lax with oplax");
    bool oplax = bo || ao;
    int rank = std::max(flavor_rank(b.flavor), flavor_rank(a.flavor));
    if (rank == 0) return {Flavor::Strict, std::nullopt};
    if (rank == 1) return {Flavor::Pseudo, std::nullopt};
    if (rank == 2) {
        // one side is marked (or sigma); the composite keeps that flavor when
        // the other side is at least as strict or carries the same marking
        const Transformation& weak = flavor_rank(b.flavor) == 2 ? b : a;
        const Transformation& other = flavor_rank(b.flavor) == 2 ? a : b;
        bool compatible = flavor_rank(other.flavor) < 2 ||
                          (other.flavor == weak.flavor && *other.marking == *weak.marking);
        if (compatible) return {weak.flavor, weak.marking};
        return {oplax ? Flavor::Oplax : Flavor::Lax, std::nullopt};
    }
    return {oplax ? Flavor::Oplax : Flavor::Lax, std::nullopt};
}

}  // namespace

Transformation vcompose(const Transformation& b, const Transformation& a) {
    if (!(a.tgt == b.src)) throw ShapeMismatch("vcompose: middle diagram mismatch");
    Transformation t;
    auto [fl, mk] = combine_flavors(b, a);
    t.flavor = fl;
    t.marking = std::move(mk);
    t.src = a.src;
    t.tgt = b.tgt;
    const Finite2Category& base = a.src.base;
    for (const Id& x : base.objects)
        t.component[x] = compose_functors(b.at(x), a.at(x));
    for (const auto& [key, h] : base.hom)
        for (const Id& f : h.objects) {
            auto [x, y] = key;
            if (flavor_is_oplax(t.flavor))
                t.structure[f] = kernel::vcompose(whisker_pre(b.str(f), a.at(x)),
                                                  whisker_post(b.at(y), a.str(f)));
            else
                t.structure[f] = kernel::vcompose(whisker_post(b.at(y), a.str(f)),
                                                  whisker_pre(b.str(f), a.at(x)));
        }
    return t;
}

Modification vcompose(const Modification& b, const Modification& a) {
    Modification m;
    m.src = a.src;
    m.tgt = b.tgt;
    for (const auto& [x, comp] : a.component)
        m.component[x] = kernel::vcompose(b.at(x), comp);
    return m;
}

Transformation paste(const Transformation& t, const TwoFunctor& at, Side side) {
    if (side == Side::Post)
        throw ShapeMismatch("post-pasting a Cat-valued transformation with a 2-functor");
    if (!(at.tgt == t.src.base)) throw ShapeMismatch("paste: base mismatch");
    Transformation out;
    out.flavor = t.flavor;
    out.src = precompose(t.src, at);
    out.tgt = precompose(t.tgt, at);
    if (t.marking) {
        Marking mk;
        mk.carrier = at.src;
        for (const Id& c : at.src.all_1cells())
            if (t.marking->is_marked(at.cell1(c))) mk.marked.insert(c);
        out.marking = std::move(mk);
    }
    for (const Id& a : at.src.objects) out.component[a] = t.at(at.obj(a));
    for (const Id& c : at.src.all_1cells()) out.structure[c] = t.str(at.cell1(c));
    return out;
}

Transformation paste(const Transformation& t, const Transformation& at, Side side) {
    return side == Side::Post ? vcompose(at, t) : vcompose(t, at);
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Transformation> enumerate_transformations(const CatValued2Functor& f,
                                                      const CatValued2Functor& g,
                                                      Flavor flavor,
                                                      std::optional<Marking> marking,
                                                      const Limits& limits) {
    if (flavor_uses_marking(flavor) != marking.has_value())
        throw FlavorMismatch("marking presence does not match flavor " + flavor_name(flavor));
    if (!(f.base == g.base)) throw ShapeMismatch("enumerate_transformations: base mismatch");
    const Finite2Category& base = f.base;

    std::vector<Id> objs = base.objects;
    std::set<Id> units;
    for (const auto& [x, u] : base.unit) units.insert(u);
    std::vector<Id> cells;
    for (const Id& c : base.all_1cells())
        if (!units.count(c)) cells.push_back(c);

    std::map<Id, std::vector<Functor>> comp_cands;
    for (const Id& a : objs) comp_cands[a] = enumerate_functors(f.obj(a), g.obj(a), limits);

    std::vector<Transformation> out;
    std::size_t nodes = 0;
    Transformation t;
    t.flavor = flavor;
    t.marking = marking;
    t.src = f;
    t.tgt = g;

    // Checks that become decidable once structure on `upto` cells is known.
    auto prune = [&](std::size_t assigned) {
        std::set<Id> have = units;
        for (std::size_t i = 0; i < assigned; ++i) have.insert(cells[i]);
        for (const auto& [pair, h] : base.hcomp1) {
            if (!have.count(pair.first) || !have.count(pair.second) || !have.count(h)) continue;
            if (t.str(h).component != pasted_structure(t, pair.first, pair.second).component)
                return false;
        }
        for (const Id& d : base.all_2cells()) {
            auto [a, b] = base.cell2_home(d);
            if (base.hom_at(a, b).is_identity(d)) continue;
            if (!have.count(base.vsrc(d)) || !have.count(base.vtgt(d))) continue;
            if (!two_dim_axiom_holds(t, d)) return false;
        }
        return true;
    };

    std::function<void(std::size_t)> choose_structure = [&](std::size_t i) {
        if (++nodes > limits.max_candidates)
            throw SizeExceeded("transformation enumeration exceeded candidate cap");
        if (i == cells.size()) {
            out.push_back(t);
            return;
        }
        const Id& c = cells[i];
        auto [a, b] = base.cell1_home(c);
        auto [s0, s1] = structure_shape(t, c, a, b);
        for (NaturalTransformation& cand : enumerate_nat_trans(s0, s1, limits)) {
            if (!flavor_ok(t, c, cand)) continue;
            t.structure[c] = std::move(cand);
            if (prune(i + 1)) choose_structure(i + 1);
            t.structure.erase(c);
        }
    };

    std::function<void(std::size_t)> choose_component = [&](std::size_t i) {
        if (++nodes > limits.max_candidates)
            throw SizeExceeded("transformation enumeration exceeded candidate cap");
        if (i == objs.size()) {
            for (const auto& [x, u] : base.unit)
                t.structure[u] = identity_nat(compose_functors(g.cell1(u), t.at(x)));
            choose_structure(0);
            for (const auto& [x, u] : base.unit) t.structure.erase(u);
            return;
        }
        for (const Functor& cand : comp_cands[objs[i]]) {
            t.component[objs[i]] = cand;
            choose_component(i + 1);
            t.component.erase(objs[i]);
        }
    };
    choose_component(0);
    return out;
}

std::vector<Modification> enumerate_modifications(const Transformation& s,
                                                  const Transformation& t,
                                                  const Limits& limits) {
    const Finite2Category& base = s.src.base;
    std::vector<Id> objs = base.objects;

    Modification m;
    m.src = s;
    m.tgt = t;
    std::vector<Modification> out;
    std::size_t nodes = 0;

    auto prune = [&](std::size_t assigned) {
        std::set<Id> have(objs.begin(), objs.begin() + assigned);
        const CatValued2Functor& F = s.src;
        const CatValued2Functor& G = s.tgt;
        for (const auto& [key, h] : base.hom) {
            if (!have.count(key.first) || !have.count(key.second)) continue;
            for (const Id& f : h.objects) {
                NaturalTransformation lhs, rhs;
                if (flavor_is_oplax(s.flavor)) {
                    lhs = kernel::vcompose(whisker_post(G.cell1(f), m.at(key.first)),
                                           s.str(f));
                    rhs = kernel::vcompose(t.str(f),
                                           whisker_pre(m.at(key.second), F.cell1(f)));
                } else {
                    lhs = kernel::vcompose(whisker_pre(m.at(key.second), F.cell1(f)),
                                           s.str(f));
                    rhs = kernel::vcompose(t.str(f),
                                           whisker_post(G.cell1(f), m.at(key.first)));
                }
                if (lhs.component != rhs.component) return false;
            }
        }
        return true;
    };

    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (++nodes > limits.max_candidates)
            throw SizeExceeded("modification enumeration exceeded candidate cap");
        if (i == objs.size()) {
            out.push_back(m);
            return;
        }
        for (NaturalTransformation& cand :
             enumerate_nat_trans(s.at(objs[i]), t.at(objs[i]), limits)) {
            m.component[objs[i]] = std::move(cand);
            if (prune(i + 1)) go(i + 1);
            m.component.erase(objs[i]);
        }
    };
    go(0);
    return out;
}

Id trans_key(const Transformation& t) {
    std::string out = "T{";
    bool first = true;
    for (const auto& [a, comp] : t.component) {
        if (!first) out += ";";
        first = false;
        out += a + ":" + functor_key(comp);
    }
    out += "||";
    first = true;
    for (const auto& [f, s] : t.structure) {
        if (!first) out += ";";
        first = false;
        out += f + ":" + serialize_nat_components(s);
    }
    return out + "}";
}

Id modif_key(const Modification& m) {
    std::string out = trans_key(m.src) + "==>" + trans_key(m.tgt) + "@{";
    bool first = true;
    for (const auto& [a, c] : m.component) {
        if (!first) out += ";";
        first = false;
        out += a + ":" + serialize_nat_components(c);
    }
    return out + "}";
}

HomCategoryResult hom_category_full(const CatValued2Functor& f, const CatValued2Functor& g,
                                    Flavor flavor, std::optional<Marking> marking,
                                    const Limits& limits) {
    std::vector<Transformation> ts = enumerate_transformations(f, g, flavor, marking, limits);
    HomCategoryResult res;
    FiniteCategory& out = res.cat;
    for (const Transformation& t : ts) {
        out.add_object(trans_key(t));
        res.objects.emplace(trans_key(t), t);
    }
    std::map<Id, Modification>& mods = res.morphisms;
    for (const Transformation& s : ts)
        for (const Transformation& t : ts)
            for (Modification& m : enumerate_modifications(s, t, limits)) {
                Id k = modif_key(m);
                out.add_morphism(k, trans_key(s), trans_key(t));
                mods.emplace(k, std::move(m));
                if (out.morphisms.size() > limits.max_morphisms)
                    throw SizeExceeded("hom-category exceeds morphism cap");
            }
    for (const Transformation& t : ts)
        out.identity[trans_key(t)] = modif_key(identity_modification(t));
    out.normalize();
    for (const Morphism& m2 : out.morphisms)
        for (const Morphism& m1 : out.morphisms)
            if (m1.tgt == m2.src)
                out.composition[{m2.id, m1.id}] = modif_key(vcompose(mods.at(m2.id), mods.at(m1.id)));
    return res;
}

FiniteCategory hom_category(const CatValued2Functor& f, const CatValued2Functor& g,
                            Flavor flavor, std::optional<Marking> marking,
                            const Limits& limits) {
    return hom_category_full(f, g, flavor, marking, limits).cat;
}

// ---------------------------------------------------------------------------
// General-target transformations

ValidationReport check_transformation(const Gen2Transformation& t) {
    if (flavor_uses_marking(t.flavor) != t.marking.has_value())
        throw FlavorMismatch("marking presence does not match flavor " +
                             flavor_name(t.flavor));
    ValidationReport r;
    if (!(t.src.src == t.tgt.src) || !(t.src.tgt == t.tgt.tgt)) {
        r.fail("parallel", {});
        return r;
    }
    const Finite2Category& M = t.src.src;
    const Finite2Category& K = t.src.tgt;
    for (const Id& a : M.objects) {
        auto it = t.component.find(a);
        if (it == t.component.end()) {
            r.fail("component-total", {a});
            continue;
        }
        auto home = K.cell1_home(it->second);
        if (home != std::make_pair(t.src.obj(a), t.tgt.obj(a)))
            r.fail("component-shape", {a, it->second});
    }
    if (!r.pass) return r;
    bool oplax = flavor_is_oplax(t.flavor);
    for (const auto& [key, h] : M.hom)
        for (const Id& f : h.objects) {
            auto it = t.structure.find(f);
            if (it == t.structure.end()) {
                r.fail("structure-total", {f});
                continue;
            }
            Id lhs = K.hcomp_1(t.tgt.cell1(f), t.at(key.first));
            Id rhs = K.hcomp_1(t.at(key.second), t.src.cell1(f));
            Id want_src = oplax ? rhs : lhs;
            Id want_tgt = oplax ? lhs : rhs;
            if (K.vsrc(it->second) != want_src || K.vtgt(it->second) != want_tgt) {
                r.fail("structure-shape", {f, it->second});
                continue;
            }
            auto kh = K.cell1_home(want_src);
            const FiniteCategory& hk = K.hom_at(kh.first, kh.second);
            bool ok = true;
            switch (t.flavor) {
                case Flavor::Strict: ok = hk.is_identity(it->second); break;
                case Flavor::Pseudo: ok = hk.is_iso(it->second); break;
                case Flavor::MarkedLax:
                case Flavor::MarkedOplax:
                    ok = !t.marking->is_marked(f) || hk.is_identity(it->second);
                    break;
                case Flavor::Sigma:
                    ok = !t.marking->is_marked(f) || hk.is_iso(it->second);
                    break;
                default: break;
            }
            if (!ok) r.fail("flavor-structure", {f});
        }
    if (!r.pass) return r;
    for (const auto& [x, u] : M.unit)
        if (t.str(u) != K.id2(t.at(x))) r.fail("unit-structure", {x, u});
    for (const auto& [pair, h] : M.hcomp1) {
        Id g = pair.first, f = pair.second;
        Id a = M.cell1_home(f).first;
        Id want;
        if (oplax)
            want = K.vcomp(K.whisker_l(t.tgt.cell1(g), t.str(f)),
                           K.whisker_r(t.str(g), t.src.cell1(f)));
        else
            want = K.vcomp(K.whisker_r(t.str(g), t.src.cell1(f)),
                           K.whisker_l(t.tgt.cell1(g), t.str(f)));
        if (t.str(h) != want) r.fail("composition-structure", {g, f, h});
    }
    for (const Id& d : M.all_2cells()) {
        auto [a, b] = M.cell2_home(d);
        if (M.hom_at(a, b).is_identity(d)) continue;
        Id f = M.vsrc(d), g = M.vtgt(d);
        Id lhs, rhs;
        if (oplax) {
            lhs = K.vcomp(K.whisker_r(t.tgt.cell2(d), t.at(a)), t.str(f));
            rhs = K.vcomp(t.str(g), K.whisker_l(t.at(b), t.src.cell2(d)));
        } else {
            lhs = K.vcomp(t.str(g), K.whisker_r(t.tgt.cell2(d), t.at(a)));
            rhs = K.vcomp(K.whisker_l(t.at(b), t.src.cell2(d)), t.str(f));
        }
        if (lhs != rhs) r.fail("two-dim", {d});
    }
    return r;
}

ValidationReport check_modification(const Gen2Modification& m) {
    ValidationReport r;
    if (!(m.src.src == m.tgt.src) || !(m.src.tgt == m.tgt.tgt) ||
        m.src.flavor != m.tgt.flavor) {
        r.fail("parallel", {});
        return r;
    }
    const Finite2Category& M = m.src.src.src;
    const Finite2Category& K = m.src.src.tgt;
    for (const Id& a : M.objects) {
        auto it = m.component.find(a);
        if (it == m.component.end()) {
            r.fail("component-total", {a});
            continue;
        }
        if (K.vsrc(it->second) != m.src.at(a) || K.vtgt(it->second) != m.tgt.at(a))
            r.fail("component-shape", {a, it->second});
    }
    if (!r.pass) return r;
    const TwoFunctor& V = m.src.src;
    const TwoFunctor& W = m.src.tgt;
    bool oplax = flavor_is_oplax(m.src.flavor);
    for (const auto& [key, h] : M.hom)
        for (const Id& f : h.objects) {
            Id lhs, rhs;
            if (oplax) {
                lhs = K.vcomp(K.whisker_l(W.cell1(f), m.at(key.first)), m.src.str(f));
                rhs = K.vcomp(m.tgt.str(f), K.whisker_r(m.at(key.second), V.cell1(f)));
            } else {
                lhs = K.vcomp(K.whisker_r(m.at(key.second), V.cell1(f)), m.src.str(f));
                rhs = K.vcomp(m.tgt.str(f), K.whisker_l(W.cell1(f), m.at(key.first)));
            }
            if (lhs != rhs) r.fail("modification-axiom", {f});
        }
    return r;
}

Gen2Transformation identity_gen2(const TwoFunctor& f, Flavor flavor) {
    Gen2Transformation t;
    t.flavor = flavor;
    t.src = t.tgt = f;
    for (const Id& a : f.src.objects) t.component[a] = f.tgt.unit_on(f.obj(a));
    for (const Id& c : f.src.all_1cells()) t.structure[c] = f.tgt.id2(f.cell1(c));
    return t;
}

std::vector<Gen2Transformation> enumerate_gen2_transformations(
    const TwoFunctor& f, const TwoFunctor& g, Flavor flavor,
    std::optional<Marking> marking, const Limits& limits) {
    if (flavor_uses_marking(flavor) != marking.has_value())
        throw FlavorMismatch("marking presence does not match flavor " + flavor_name(flavor));
    const Finite2Category& M = f.src;
    const Finite2Category& K = f.tgt;
    std::vector<Id> objs = M.objects;
    std::set<Id> units;
    for (const auto& [x, u] : M.unit) units.insert(u);
    std::vector<Id> cells;
    for (const Id& c : M.all_1cells())
        if (!units.count(c)) cells.push_back(c);

    Gen2Transformation t;
    t.flavor = flavor;
    t.marking = marking;
    t.src = f;
    t.tgt = g;
    std::vector<Gen2Transformation> out;
    std::size_t nodes = 0;
    bool oplax = flavor_is_oplax(flavor);

    auto prune = [&](const std::set<Id>& have) {
        for (const auto& [pair, h] : M.hcomp1) {
            if (!have.count(pair.first) || !have.count(pair.second) || !have.count(h)) continue;
            Id gg = pair.first, ff = pair.second, want;
            if (oplax)
                want = K.vcomp(K.whisker_l(t.tgt.cell1(gg), t.str(ff)),
                               K.whisker_r(t.str(gg), t.src.cell1(ff)));
            else
                want = K.vcomp(K.whisker_r(t.str(gg), t.src.cell1(ff)),
                               K.whisker_l(t.tgt.cell1(gg), t.str(ff)));
            if (t.str(h) != want) return false;
        }
        for (const Id& d : M.all_2cells()) {
            auto [a, b] = M.cell2_home(d);
            if (M.hom_at(a, b).is_identity(d)) continue;
            Id ff = M.vsrc(d), gg = M.vtgt(d);
            if (!have.count(ff) || !have.count(gg)) continue;
            Id lhs, rhs;
            if (oplax) {
                lhs = K.vcomp(K.whisker_r(t.tgt.cell2(d), t.at(a)), t.str(ff));
                rhs = K.vcomp(t.str(gg), K.whisker_l(t.at(b), t.src.cell2(d)));
            } else {
                lhs = K.vcomp(t.str(gg), K.whisker_r(t.tgt.cell2(d), t.at(a)));
                rhs = K.vcomp(K.whisker_l(t.at(b), t.src.cell2(d)), t.str(ff));
            }
            if (lhs != rhs) return false;
        }
        return true;
    };

    std::function<void(std::size_t)> choose_structure = [&](std::size_t i) {
        if (++nodes > limits.max_candidates)
            throw SizeExceeded("gen2 enumeration exceeded candidate cap");
        if (i == cells.size()) {
            out.push_back(t);
            return;
        }
        const Id& c = cells[i];
        auto [a, b] = M.cell1_home(c);
        Id lhs = K.hcomp_1(t.tgt.cell1(c), t.at(a));
        Id rhs = K.hcomp_1(t.at(b), t.src.cell1(c));
        Id want_src = oplax ? rhs : lhs;
        Id want_tgt = oplax ? lhs : rhs;
        auto home = K.cell1_home(want_src);
        const FiniteCategory& hk = K.hom_at(home.first, home.second);
        for (const Morphism& cand : hk.morphisms) {
            if (cand.src != want_src || cand.tgt != want_tgt) continue;
            bool ok = true;
            switch (flavor) {
                case Flavor::Strict: ok = hk.is_identity(cand.id); break;
                case Flavor::Pseudo: ok = hk.is_iso(cand.id); break;
                case Flavor::MarkedLax:
                case Flavor::MarkedOplax:
                    ok = !marking->is_marked(c) || hk.is_identity(cand.id);
                    break;
                case Flavor::Sigma:
                    ok = !marking->is_marked(c) || hk.is_iso(cand.id);
                    break;
                default: break;
            }
            if (!ok) continue;
            t.structure[c] = cand.id;
            std::set<Id> have = units;
            for (std::size_t j = 0; j <= i; ++j) have.insert(cells[j]);
            if (prune(have)) choose_structure(i + 1);
            t.structure.erase(c);
        }
    };

    std::function<void(std::size_t)> choose_component = [&](std::size_t i) {
        if (++nodes > limits.max_candidates)
            throw SizeExceeded("gen2 enumeration exceeded candidate cap");
        if (i == objs.size()) {
            for (const auto& [x, u] : M.unit) t.structure[u] = K.id2(t.at(x));
            choose_structure(0);
            for (const auto& [x, u] : M.unit) t.structure.erase(u);
            return;
        }
        for (const Id& cand : K.cells1(f.obj(objs[i]), g.obj(objs[i]))) {
            t.component[objs[i]] = cand;
            choose_component(i + 1);
            t.component.erase(objs[i]);
        }
    };
    choose_component(0);
    return out;
}

Transformation apply(const CatValued2Functor& f, const Gen2Transformation& nu) {
    if (!(nu.src.tgt == f.base)) throw ShapeMismatch("apply: base mismatch");
    Transformation t;
    t.flavor = nu.flavor == Flavor::Strict ? Flavor::Strict : Flavor::Lax;
    t.src = precompose(f, nu.src);
    t.tgt = precompose(f, nu.tgt);
    const Finite2Category& M = nu.src.src;
    for (const Id& a : M.objects) t.component[a] = f.cell1(nu.at(a));
    for (const Id& c : M.all_1cells()) t.structure[c] = f.cell2(nu.str(c));
    return t;
}

Modification interchange_modification(const Gen2Transformation& nu,
                                      const Transformation& lam) {
    if (!(lam.src.base == nu.src.tgt))
        throw ShapeMismatch("interchange_modification: lam must live over nu's target");
    Modification m;
    m.src = vcompose(apply(lam.tgt, nu), paste(lam, nu.src, Side::Pre));
    m.tgt = vcompose(paste(lam, nu.tgt, Side::Pre), apply(lam.src, nu));
    for (const Id& a : nu.src.src.objects) m.component[a] = lam.str(nu.at(a));
    return m;
}

}  // namespace cat2::diagrams
