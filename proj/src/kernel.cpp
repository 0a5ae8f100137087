#include "cat2/kernel.hpp"

#include <functional>

namespace cat2::kernel {

namespace {

// Shared backtracking driver: slots[i] lists candidate values for slot i in
// the order they should be tried; accept(i, chosen-prefix) prunes; emit is
// called on every full assignment. Throws SizeExceeded past the node cap.
void backtrack(const std::vector<std::vector<Id>>& slots,
               const std::function<bool(std::size_t, const std::vector<Id>&)>& accept,
               const std::function<void(const std::vector<Id>&)>& emit,
               std::size_t max_nodes) {
    std::vector<Id> chosen;
    std::size_t nodes = 0;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (++nodes > max_nodes) throw SizeExceeded("enumeration exceeded candidate cap");
        if (i == slots.size()) {
            emit(chosen);
            return;
        }
        for (const Id& v : slots[i]) {
            chosen.push_back(v);
            if (accept(i, chosen)) go(i + 1);
            chosen.pop_back();
        }
    };
    go(0);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Basic category builders

FiniteCategory terminal_category() {
    FiniteCategory c;
    c.add_object("*");
    c.add_morphism(id_tag("*"), "*", "*");
    c.identity["*"] = id_tag("*");
    c.composition[{id_tag("*"), id_tag("*")}] = id_tag("*");
    c.normalize();
    return c;
}

FiniteCategory discrete_category(const std::vector<Id>& objects) {
    FiniteCategory c;
    for (const Id& x : objects) {
        c.add_object(x);
        c.add_morphism(id_tag(x), x, x);
        c.identity[x] = id_tag(x);
        c.composition[{id_tag(x), id_tag(x)}] = id_tag(x);
    }
    c.normalize();
    return c;
}

FiniteCategory walking_arrow() {
    FiniteCategory c = discrete_category({"a", "b"});
    c.add_morphism("f", "a", "b");
    c.composition[{"f", id_tag("a")}] = "f";
    c.composition[{id_tag("b"), "f"}] = "f";
    c.normalize();
    return c;
}

FiniteCategory walking_iso() {
    FiniteCategory c = discrete_category({"a", "b"});
    c.add_morphism("f", "a", "b");
    c.add_morphism("g", "b", "a");
    c.composition[{"f", id_tag("a")}] = "f";
    c.composition[{id_tag("b"), "f"}] = "f";
    c.composition[{"g", id_tag("b")}] = "g";
    c.composition[{id_tag("a"), "g"}] = "g";
    c.composition[{"g", "f"}] = id_tag("a");
    c.composition[{"f", "g"}] = id_tag("b");
    c.normalize();
    return c;
}

FiniteCategory composable_pair() {
    FiniteCategory c = discrete_category({"a", "b", "c"});
    c.add_morphism("f", "a", "b");
    c.add_morphism("g", "b", "c");
    c.add_morphism("gf", "a", "c");
    c.composition[{"f", id_tag("a")}] = "f";
    c.composition[{id_tag("b"), "f"}] = "f";
    c.composition[{"g", id_tag("b")}] = "g";
    c.composition[{id_tag("c"), "g"}] = "g";
    c.composition[{"gf", id_tag("a")}] = "gf";
    c.composition[{id_tag("c"), "gf"}] = "gf";
    c.composition[{"g", "f"}] = "gf";
    c.normalize();
    return c;
}

FiniteCategory commutative_square() {
    FiniteCategory c = discrete_category({"nw", "ne", "sw", "se"});
    c.add_morphism("top", "nw", "ne");
    c.add_morphism("left", "nw", "sw");
    c.add_morphism("right", "ne", "se");
    c.add_morphism("bottom", "sw", "se");
    c.add_morphism("diag", "nw", "se");
    auto unit = [&](const Id& m, const Id& a, const Id& b) {
        c.composition[{m, id_tag(a)}] = m;
        c.composition[{id_tag(b), m}] = m;
    };
    unit("top", "nw", "ne");
    unit("left", "nw", "sw");
    unit("right", "ne", "se");
    unit("bottom", "sw", "se");
    unit("diag", "nw", "se");
    c.composition[{"right", "top"}] = "diag";
    c.composition[{"bottom", "left"}] = "diag";
    c.normalize();
    return c;
}

FiniteCategory parallel_pair() {
    FiniteCategory c = discrete_category({"a", "b"});
    c.add_morphism("f", "a", "b");
    c.add_morphism("g", "a", "b");
    for (const Id& m : {Id("f"), Id("g")}) {
        c.composition[{m, id_tag("a")}] = m;
        c.composition[{id_tag("b"), m}] = m;
    }
    c.normalize();
    return c;
}

// ---------------------------------------------------------------------------
// Category validation

ValidationReport validate(const FiniteCategory& c) {
    ValidationReport r;
    for (std::size_t i = 1; i < c.objects.size(); ++i)
        if (c.objects[i - 1] == c.objects[i])
            r.fail("objects-unique", {c.objects[i]});
    for (std::size_t i = 1; i < c.morphisms.size(); ++i)
        if (c.morphisms[i - 1].id == c.morphisms[i].id)
            r.fail("morphisms-unique", {c.morphisms[i].id});
    for (const Morphism& m : c.morphisms) {
        if (!c.has_object(m.src)) r.fail("morphism-endpoints", {m.id, m.src});
        if (!c.has_object(m.tgt)) r.fail("morphism-endpoints", {m.id, m.tgt});
    }
    for (const Id& x : c.objects) {
        auto it = c.identity.find(x);
        if (it == c.identity.end()) {
            r.fail("identity-exists", {x});
            continue;
        }
        const Morphism* m = c.find_morphism(it->second);
        if (!m || m->src != x || m->tgt != x) r.fail("identity-endpoints", {x, it->second});
    }
    if (!r.pass) return r;  // the law checks below need a well-formed table

    for (const Morphism& g : c.morphisms)
        for (const Morphism& f : c.morphisms) {
            bool composable = f.tgt == g.src;
            auto it = c.composition.find({g.id, f.id});
            if (!composable) {
                if (it != c.composition.end()) r.fail("composition-domain", {g.id, f.id});
                continue;
            }
            if (it == c.composition.end()) {
                r.fail("composition-total", {g.id, f.id});
                continue;
            }
            const Morphism* h = c.find_morphism(it->second);
            if (!h || h->src != f.src || h->tgt != g.tgt)
                r.fail("composition-endpoints", {g.id, f.id, it->second});
        }
    if (!r.pass) return r;

    for (const Morphism& m : c.morphisms) {
        if (c.compose(m.id, c.id_on(m.src)) != m.id) r.fail("unit-law", {m.id, c.id_on(m.src)});
        if (c.compose(c.id_on(m.tgt), m.id) != m.id) r.fail("unit-law", {c.id_on(m.tgt), m.id});
    }
    for (const Morphism& h : c.morphisms)
        for (const Morphism& g : c.morphisms) {
            if (g.tgt != h.src) continue;
            for (const Morphism& f : c.morphisms) {
                if (f.tgt != g.src) continue;
                if (c.compose(h.id, c.compose(g.id, f.id)) !=
                    c.compose(c.compose(h.id, g.id), f.id))
                    r.fail("associativity", {h.id, g.id, f.id});
            }
        }
    return r;
}

// ---------------------------------------------------------------------------
// Derived categories

FiniteCategory opposite_category(const FiniteCategory& c) {
    FiniteCategory d;
    d.objects = c.objects;
    for (const Morphism& m : c.morphisms) d.add_morphism(m.id, m.tgt, m.src);
    d.identity = c.identity;
    for (const auto& [pair, h] : c.composition) d.composition[{pair.second, pair.first}] = h;
    d.normalize();
    return d;
}

FiniteCategory product_category(const FiniteCategory& c, const FiniteCategory& d,
                                const Limits& limits) {
    if (c.morphisms.size() * d.morphisms.size() > limits.max_morphisms)
        throw SizeExceeded("product category exceeds morphism cap");
    FiniteCategory p;
    for (const Id& x : c.objects)
        for (const Id& y : d.objects) p.add_object(pair_tag(x, y));
    for (const Morphism& m : c.morphisms)
        for (const Morphism& n : d.morphisms)
            p.add_morphism(pair_tag(m.id, n.id), pair_tag(m.src, n.src), pair_tag(m.tgt, n.tgt));
    for (const Id& x : c.objects)
        for (const Id& y : d.objects)
            p.identity[pair_tag(x, y)] = pair_tag(c.id_on(x), d.id_on(y));
    for (const auto& [cp, ch] : c.composition)
        for (const auto& [dp, dh] : d.composition)
            p.composition[{pair_tag(cp.first, dp.first), pair_tag(cp.second, dp.second)}] =
                pair_tag(ch, dh);
    p.normalize();
    return p;
}

FiniteCategory slice_category(const FiniteCategory& c, const Id& x) {
    FiniteCategory s;
    std::vector<Morphism> into;
    for (const Morphism& m : c.morphisms)
        if (m.tgt == x) {
            into.push_back(m);
            s.add_object(m.id);
        }
    for (const Morphism& alpha : into)
        for (const Morphism& alpha2 : into)
            for (const Id& gamma : c.hom(alpha.src, alpha2.src))
                if (c.compose(alpha2.id, gamma) == alpha.id)
                    s.add_morphism(pair_tag(gamma, alpha2.id), alpha.id, alpha2.id);
    for (const Morphism& alpha : into)
        s.identity[alpha.id] = pair_tag(c.id_on(alpha.src), alpha.id);
    s.normalize();
    for (const Morphism& m2 : s.morphisms)
        for (const Morphism& m1 : s.morphisms) {
            if (m1.tgt != m2.src) continue;
            Id g2 = m2.id.substr(0, m2.id.find('|'));
            Id g1 = m1.id.substr(0, m1.id.find('|'));
            s.composition[{m2.id, m1.id}] = pair_tag(c.compose(g2, g1), m2.tgt);
        }
    return s;
}

FiniteCategory coslice_category(const FiniteCategory& c, const Id& x) {
    FiniteCategory s;
    std::vector<Morphism> outof;
    for (const Morphism& m : c.morphisms)
        if (m.src == x) {
            outof.push_back(m);
            s.add_object(m.id);
        }
    for (const Morphism& alpha : outof)
        for (const Morphism& alpha2 : outof)
            for (const Id& gamma : c.hom(alpha.tgt, alpha2.tgt))
                if (c.compose(gamma, alpha.id) == alpha2.id)
                    s.add_morphism(pair_tag(gamma, alpha2.id), alpha.id, alpha2.id);
    for (const Morphism& alpha : outof)
        s.identity[alpha.id] = pair_tag(c.id_on(alpha.tgt), alpha.id);
    s.normalize();
    for (const Morphism& m2 : s.morphisms)
        for (const Morphism& m1 : s.morphisms) {
            if (m1.tgt != m2.src) continue;
            Id g2 = m2.id.substr(0, m2.id.find('|'));
            Id g1 = m1.id.substr(0, m1.id.find('|'));
            s.composition[{m2.id, m1.id}] = pair_tag(c.compose(g2, g1), m2.tgt);
        }
    return s;
}

// ---------------------------------------------------------------------------
// Functors and natural transformations

ValidationReport validate(const Functor& f) {
    ValidationReport r;
    for (const Id& x : f.src.objects) {
        auto it = f.on_obj.find(x);
        if (it == f.on_obj.end()) {
            r.fail("functor-object-total", {x});
            continue;
        }
        if (!f.tgt.has_object(it->second)) r.fail("functor-object-image", {x, it->second});
    }
    for (const Morphism& m : f.src.morphisms) {
        auto it = f.on_mor.find(m.id);
        if (it == f.on_mor.end()) {
            r.fail("functor-morphism-total", {m.id});
            continue;
        }
        const Morphism* im = f.tgt.find_morphism(it->second);
        if (!im) {
            r.fail("functor-morphism-image", {m.id, it->second});
            continue;
        }
        auto so = f.on_obj.find(m.src);
        auto to = f.on_obj.find(m.tgt);
        if (so == f.on_obj.end() || to == f.on_obj.end()) continue;
        if (im->src != so->second || im->tgt != to->second)
            r.fail("functor-endpoints", {m.id, it->second});
    }
    if (!r.pass) return r;
    for (const Id& x : f.src.objects)
        if (f.mor(f.src.id_on(x)) != f.tgt.id_on(f.obj(x)))
            r.fail("functor-identity", {x});
    for (const auto& [pair, h] : f.src.composition)
        if (f.tgt.compose(f.mor(pair.first), f.mor(pair.second)) != f.mor(h))
            r.fail("functor-composition", {pair.first, pair.second});
    return r;
}

bool functors_parallel(const Functor& f, const Functor& g) {
    return f.src == g.src && f.tgt == g.tgt;
}

ValidationReport validate(const NaturalTransformation& t) {
    ValidationReport r;
    if (!functors_parallel(t.src, t.tgt)) {
        r.fail("nat-parallel", {});
        return r;
    }
    const FiniteCategory& d = t.src.tgt;
    for (const Id& x : t.src.src.objects) {
        auto it = t.component.find(x);
        if (it == t.component.end()) {
            r.fail("nat-component-total", {x});
            continue;
        }
        const Morphism* m = d.find_morphism(it->second);
        if (!m || m->src != t.src.obj(x) || m->tgt != t.tgt.obj(x))
            r.fail("nat-component-endpoints", {x, it->second});
    }
    if (!r.pass) return r;
    for (const Morphism& m : t.src.src.morphisms)
        if (d.compose(t.at(m.tgt), t.src.mor(m.id)) != d.compose(t.tgt.mor(m.id), t.at(m.src)))
            r.fail("naturality", {m.id});
    return r;
}

Functor identity_functor(const FiniteCategory& c) {
    Functor f;
    f.src = f.tgt = c;
    for (const Id& x : c.objects) f.on_obj[x] = x;
    for (const Morphism& m : c.morphisms) f.on_mor[m.id] = m.id;
    return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
    if (!(f.tgt == g.src)) throw ShapeMismatch("compose_functors: middle category mismatch");
    Functor h;
    h.src = f.src;
    h.tgt = g.tgt;
    for (const auto& [x, y] : f.on_obj) h.on_obj[x] = g.obj(y);
    for (const auto& [m, n] : f.on_mor) h.on_mor[m] = g.mor(n);
    return h;
}

NaturalTransformation identity_nat(const Functor& f) {
    NaturalTransformation t;
    t.src = t.tgt = f;
    for (const Id& x : f.src.objects) t.component[x] = f.tgt.id_on(f.obj(x));
    return t;
}

NaturalTransformation vcompose(const NaturalTransformation& b, const NaturalTransformation& a) {
    if (!(a.tgt == b.src)) throw ShapeMismatch("vcompose: middle functor mismatch");
    NaturalTransformation t;
    t.src = a.src;
    t.tgt = b.tgt;
    for (const Id& x : a.src.src.objects)
        t.component[x] = a.src.tgt.compose(b.at(x), a.at(x));
    return t;
}

NaturalTransformation whisker_post(const Functor& h, const NaturalTransformation& t) {
    if (!(t.src.tgt == h.src)) throw ShapeMismatch("whisker_post: category mismatch");
    NaturalTransformation out;
    out.src = compose_functors(h, t.src);
    out.tgt = compose_functors(h, t.tgt);
    for (const auto& [x, m] : t.component) out.component[x] = h.mor(m);
    return out;
}

NaturalTransformation whisker_pre(const NaturalTransformation& t, const Functor& h) {
    if (!(h.tgt == t.src.src)) throw ShapeMismatch("whisker_pre: category mismatch");
    NaturalTransformation out;
    out.src = compose_functors(t.src, h);
    out.tgt = compose_functors(t.tgt, h);
    for (const Id& x : h.src.objects) out.component[x] = t.at(h.obj(x));
    return out;
}

bool nat_invertible(const NaturalTransformation& t) {
    for (const auto& [x, m] : t.component)
        if (!t.src.tgt.is_iso(m)) return false;
    return true;
}

ValidationReport iso_of_categories(const Functor& f) {
    ValidationReport r = validate(f);
    if (!r.pass) return r;
    std::map<Id, Id> seen_obj;
    for (const Id& x : f.src.objects) {
        auto [it, fresh] = seen_obj.emplace(f.obj(x), x);
        if (!fresh) r.fail("iso-object-collision", {it->second, x, f.obj(x)});
    }
    for (const Id& y : f.tgt.objects)
        if (!seen_obj.count(y)) r.fail("iso-object-not-hit", {y});
    std::map<Id, Id> seen_mor;
    for (const Morphism& m : f.src.morphisms) {
        auto [it, fresh] = seen_mor.emplace(f.mor(m.id), m.id);
        if (!fresh) r.fail("iso-morphism-collision", {it->second, m.id, f.mor(m.id)});
    }
    for (const Morphism& n : f.tgt.morphisms)
        if (!seen_mor.count(n.id)) r.fail("iso-morphism-not-hit", {n.id});
    return r;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Functor> enumerate_functors(const FiniteCategory& c, const FiniteCategory& d,
                                        const Limits& limits) {
    // Slots: one per object of c, then one per non-identity morphism of c.
    // Identity images are forced; composite consistency is pruned as soon as
    // both factors and the composite are assigned.
    std::vector<Id> obj_slots = c.objects;
    std::vector<Id> mor_slots;
    for (const Morphism& m : c.morphisms)
        if (!c.is_identity(m.id)) mor_slots.push_back(m.id);

    std::map<Id, std::size_t> obj_index, mor_index;
    for (std::size_t i = 0; i < obj_slots.size(); ++i) obj_index[obj_slots[i]] = i;
    for (std::size_t i = 0; i < mor_slots.size(); ++i) mor_index[mor_slots[i]] = i;

    std::vector<std::vector<Id>> slots;
    for (std::size_t i = 0; i < obj_slots.size(); ++i) slots.push_back(d.objects);
    std::vector<Id> all_d_mor;
    for (const Morphism& m : d.morphisms) all_d_mor.push_back(m.id);
    for (std::size_t i = 0; i < mor_slots.size(); ++i) slots.push_back(all_d_mor);

    std::size_t nobj = obj_slots.size();
    auto mor_image = [&](const std::vector<Id>& chosen, const Id& m) -> std::optional<Id> {
        if (c.is_identity(m)) {
            std::size_t oi = obj_index.at(c.src(m));
            if (oi < chosen.size()) return d.id_on(chosen[oi]);
            return std::nullopt;
        }
        std::size_t mi = nobj + mor_index.at(m);
        if (mi < chosen.size()) return chosen[mi];
        return std::nullopt;
    };

    auto accept = [&](std::size_t i, const std::vector<Id>& chosen) {
        if (i < nobj) return true;
        const Id& m = mor_slots[i - nobj];
        const Morphism& mm = c.mor(m);
        const Morphism& im = d.mor(chosen[i]);
        if (im.src != chosen[obj_index.at(mm.src)] || im.tgt != chosen[obj_index.at(mm.tgt)])
            return false;
        // composites fully determined so far must agree
        for (const auto& [pair, h] : c.composition) {
            auto g = mor_image(chosen, pair.first);
            auto f = mor_image(chosen, pair.second);
            auto hh = mor_image(chosen, h);
            if (g && f && hh && d.compose(*g, *f) != *hh) return false;
        }
        return true;
    };

    std::vector<Functor> out;
    auto emit = [&](const std::vector<Id>& chosen) {
        Functor f;
        f.src = c;
        f.tgt = d;
        for (std::size_t i = 0; i < nobj; ++i) f.on_obj[obj_slots[i]] = chosen[i];
        for (const Morphism& m : c.morphisms) f.on_mor[m.id] = *mor_image(chosen, m.id);
        out.push_back(std::move(f));
    };
    backtrack(slots, accept, emit, limits.max_candidates);
    return out;
}

std::vector<NaturalTransformation> enumerate_nat_trans(const Functor& f, const Functor& g,
                                                       const Limits& limits) {
    if (!functors_parallel(f, g)) throw ShapeMismatch("enumerate_nat_trans: not parallel");
    const FiniteCategory& c = f.src;
    const FiniteCategory& d = f.tgt;
    std::map<Id, std::size_t> obj_index;
    for (std::size_t i = 0; i < c.objects.size(); ++i) obj_index[c.objects[i]] = i;

    std::vector<std::vector<Id>> slots;
    for (const Id& x : c.objects) slots.push_back(d.hom(f.obj(x), g.obj(x)));

    auto accept = [&](std::size_t i, const std::vector<Id>& chosen) {
        const Id& x = c.objects[i];
        for (const Morphism& m : c.morphisms) {
            if (m.src != x && m.tgt != x) continue;
            std::size_t si = obj_index.at(m.src), ti = obj_index.at(m.tgt);
            if (si >= chosen.size() || ti >= chosen.size()) continue;
            if (d.compose(chosen[ti], f.mor(m.id)) != d.compose(g.mor(m.id), chosen[si]))
                return false;
        }
        return true;
    };

    std::vector<NaturalTransformation> out;
    auto emit = [&](const std::vector<Id>& chosen) {
        NaturalTransformation t;
        t.src = f;
        t.tgt = g;
        for (std::size_t i = 0; i < c.objects.size(); ++i) t.component[c.objects[i]] = chosen[i];
        out.push_back(std::move(t));
    };
    backtrack(slots, accept, emit, limits.max_candidates);
    return out;
}

Id functor_key(const Functor& f) {
    std::vector<std::string> os, ms;
    for (const auto& [x, y] : f.on_obj) os.push_back(x + ">" + y);
    for (const auto& [m, n] : f.on_mor) ms.push_back(m + ">" + n);
    return "[" + join(os, ",") + "/" + join(ms, ",") + "]";
}

Id nat_key(const NaturalTransformation& t) {
    std::vector<std::string> cs;
    for (const auto& [x, m] : t.component) cs.push_back(x + ">" + m);
    return functor_key(t.src) + "=>" + functor_key(t.tgt) + "{" + join(cs, ",") + "}";
}

FiniteCategory functor_category(const FiniteCategory& c, const FiniteCategory& u,
                                const Limits& limits) {
    std::vector<Functor> fs = enumerate_functors(c, u, limits);
    FiniteCategory out;
    std::map<Id, std::size_t> index;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        out.add_object(functor_key(fs[i]));
        index[functor_key(fs[i])] = i;
    }
    std::map<Id, NaturalTransformation> nats;
    for (const Functor& f : fs)
        for (const Functor& g : fs)
            for (NaturalTransformation& t : enumerate_nat_trans(f, g, limits)) {
                Id k = nat_key(t);
                out.add_morphism(k, functor_key(f), functor_key(g));
                nats.emplace(k, std::move(t));
                if (out.morphisms.size() > limits.max_morphisms)
                    throw SizeExceeded("functor category exceeds morphism cap");
            }
    for (const Functor& f : fs) out.identity[functor_key(f)] = nat_key(identity_nat(f));
    out.normalize();
    for (const Morphism& m2 : out.morphisms)
        for (const Morphism& m1 : out.morphisms)
            if (m1.tgt == m2.src)
                out.composition[{m2.id, m1.id}] =
                    nat_key(vcompose(nats.at(m2.id), nats.at(m1.id)));
    return out;
}

// ---------------------------------------------------------------------------
// 2-categories

ValidationReport validate(const Finite2Category& k) {
    ValidationReport r;
    for (std::size_t i = 1; i < k.objects.size(); ++i)
        if (k.objects[i - 1] == k.objects[i]) r.fail("2cat-objects-unique", {k.objects[i]});
    for (const Id& a : k.objects)
        for (const Id& b : k.objects)
            if (!k.hom.count({a, b})) r.fail("hom-missing", {a, b});
    for (const auto& [key, h] : k.hom) {
        ValidationReport hr = validate(h);
        for (Violation& v : hr.violations) {
            v.law = "hom/" + v.law;
            v.witness.insert(v.witness.begin(), {key.first, key.second});
        }
        r.merge(hr);
    }
    if (!r.pass) return r;

    std::map<Id, std::pair<Id, Id>> home1, home2;  // cell id -> (a,b), for uniqueness
    for (const auto& [key, h] : k.hom) {
        for (const Id& f : h.objects) {
            auto [it, fresh] = home1.emplace(f, key);
            if (!fresh) r.fail("1cell-id-unique", {f, it->second.first, key.first});
        }
        for (const Morphism& m : h.morphisms) {
            auto [it, fresh] = home2.emplace(m.id, key);
            if (!fresh) r.fail("2cell-id-unique", {m.id, it->second.first, key.first});
        }
    }
    for (const Id& x : k.objects) {
        auto it = k.unit.find(x);
        if (it == k.unit.end()) {
            r.fail("unit-exists", {x});
            continue;
        }
        if (!home1.count(it->second) || home1.at(it->second) != std::make_pair(x, x))
            r.fail("unit-home", {x, it->second});
    }
    if (!r.pass) return r;

    // hcomp1: totality, endpoints, units, associativity
    for (const Id& a : k.objects)
        for (const Id& b : k.objects)
            for (const Id& c : k.objects)
                for (const Id& g : k.cells1(b, c))
                    for (const Id& f : k.cells1(a, b)) {
                        auto it = k.hcomp1.find({g, f});
                        if (it == k.hcomp1.end()) {
                            r.fail("hcomp1-total", {g, f});
                            continue;
                        }
                        if (!k.hom_at(a, c).has_object(it->second))
                            r.fail("hcomp1-endpoints", {g, f, it->second});
                    }
    if (!r.pass) return r;
    for (const auto& [key, h] : k.hom)
        for (const Id& f : h.objects) {
            if (k.hcomp_1(f, k.unit_on(key.first)) != f) r.fail("hcomp1-unit", {f, key.first});
            if (k.hcomp_1(k.unit_on(key.second), f) != f) r.fail("hcomp1-unit", {key.second, f});
        }
    for (const auto& [hf, fhome] : home1)
        for (const auto& [hg, ghome] : home1) {
            if (ghome.first != fhome.second) continue;
            for (const auto& [hh, hhome] : home1) {
                if (hhome.first != ghome.second) continue;
                if (k.hcomp_1(hh, k.hcomp_1(hg, hf)) != k.hcomp_1(k.hcomp_1(hh, hg), hf))
                    r.fail("hcomp1-assoc", {hh, hg, hf});
            }
        }
    if (!r.pass) return r;

    // hcomp2: totality, endpoints, identity and unit behavior, interchange
    for (const Id& a : k.objects)
        for (const Id& b : k.objects)
            for (const Id& c : k.objects) {
                const FiniteCategory& hab = k.hom_at(a, b);
                const FiniteCategory& hbc = k.hom_at(b, c);
                for (const Morphism& d : hbc.morphisms)
                    for (const Morphism& e : hab.morphisms) {
                        auto it = k.hcomp2.find({d.id, e.id});
                        if (it == k.hcomp2.end()) {
                            r.fail("hcomp2-total", {d.id, e.id});
                            continue;
                        }
                        const Morphism* res = k.hom_at(a, c).find_morphism(it->second);
                        if (!res || res->src != k.hcomp_1(d.src, e.src) ||
                            res->tgt != k.hcomp_1(d.tgt, e.tgt))
                            r.fail("hcomp2-endpoints", {d.id, e.id, it->second});
                    }
            }
    if (!r.pass) return r;
    for (const Id& a : k.objects)
        for (const Id& b : k.objects)
            for (const Id& c : k.objects) {
                const FiniteCategory& hab = k.hom_at(a, b);
                const FiniteCategory& hbc = k.hom_at(b, c);
                for (const Id& g : hbc.objects)
                    for (const Id& f : hab.objects)
                        if (k.hcomp_2(hbc.id_on(g), hab.id_on(f)) !=
                            k.id2(k.hcomp_1(g, f)))
                            r.fail("hcomp2-identity", {g, f});
                for (const Morphism& d2 : hbc.morphisms)
                    for (const Morphism& d1 : hbc.morphisms) {
                        if (d1.tgt != d2.src) continue;
                        for (const Morphism& e2 : hab.morphisms)
                            for (const Morphism& e1 : hab.morphisms) {
                                if (e1.tgt != e2.src) continue;
                                Id lhs = k.hcomp_2(hbc.compose(d2.id, d1.id),
                                                   hab.compose(e2.id, e1.id));
                                Id rhs = k.vcomp(k.hcomp_2(d2.id, e2.id),
                                                 k.hcomp_2(d1.id, e1.id));
                                if (lhs != rhs)
                                    r.fail("interchange", {d2.id, d1.id, e2.id, e1.id});
                            }
                    }
            }
    if (!r.pass) return r;
    for (const auto& [key, h] : k.hom)
        for (const Morphism& e : h.morphisms) {
            if (k.hcomp_2(e.id, k.id2(k.unit_on(key.first))) != e.id)
                r.fail("hcomp2-unit", {e.id, key.first});
            if (k.hcomp_2(k.id2(k.unit_on(key.second)), e.id) != e.id)
                r.fail("hcomp2-unit", {key.second, e.id});
        }
    // associativity of horizontal composition on 2-cells
    for (const Id& a : k.objects)
        for (const Id& b : k.objects)
            for (const Id& c : k.objects)
                for (const Id& x : k.objects)
                    for (const Morphism& d : k.hom_at(c, x).morphisms)
                        for (const Morphism& e : k.hom_at(b, c).morphisms)
                            for (const Morphism& f : k.hom_at(a, b).morphisms)
                                if (k.hcomp_2(d.id, k.hcomp_2(e.id, f.id)) !=
                                    k.hcomp_2(k.hcomp_2(d.id, e.id), f.id))
                                    r.fail("hcomp2-assoc", {d.id, e.id, f.id});
    return r;
}

Finite2Category dualize(const Finite2Category& k, DualMode mode) {
    Finite2Category d;
    d.objects = k.objects;
    d.unit = k.unit;
    bool op = mode == DualMode::Op || mode == DualMode::Coop;
    bool co = mode == DualMode::Co || mode == DualMode::Coop;
    for (const auto& [key, h] : k.hom) {
        auto nk = op ? std::make_pair(key.second, key.first) : key;
        d.hom[nk] = co ? opposite_category(h) : h;
    }
    if (op)
        for (const auto& [pair, h] : k.hcomp1) d.hcomp1[{pair.second, pair.first}] = h;
    else
        d.hcomp1 = k.hcomp1;
    if (op)
        for (const auto& [pair, h] : k.hcomp2) d.hcomp2[{pair.second, pair.first}] = h;
    else
        d.hcomp2 = k.hcomp2;
    return d;
}

Finite2Category locally_discrete(const FiniteCategory& c) {
    Finite2Category k;
    k.objects = c.objects;
    for (const Id& a : c.objects)
        for (const Id& b : c.objects) {
            FiniteCategory h;
            for (const Id& m : c.hom(a, b)) {
                h.add_object(m);
                h.add_morphism(id_tag(m), m, m);
                h.identity[m] = id_tag(m);
                h.composition[{id_tag(m), id_tag(m)}] = id_tag(m);
            }
            h.normalize();
            k.hom[{a, b}] = std::move(h);
        }
    for (const Id& x : c.objects) k.unit[x] = c.id_on(x);
    for (const auto& [pair, h] : c.composition) {
        k.hcomp1[pair] = h;
        k.hcomp2[{id_tag(pair.first), id_tag(pair.second)}] = id_tag(h);
    }
    k.normalize();
    return k;
}

Finite2Category terminal_2category() { return locally_discrete(terminal_category()); }

Finite2Category walking_2cell() {
    Finite2Category k;
    k.objects = {"a", "b"};
    auto single = [](const Id& f) {
        FiniteCategory h;
        h.add_object(f);
        h.add_morphism(id_tag(f), f, f);
        h.identity[f] = id_tag(f);
        h.composition[{id_tag(f), id_tag(f)}] = id_tag(f);
        h.normalize();
        return h;
    };
    k.hom[{"a", "a"}] = single("1:a");
    k.hom[{"b", "b"}] = single("1:b");
    k.hom[{"b", "a"}] = FiniteCategory{};
    FiniteCategory hab;
    hab.add_object("f");
    hab.add_object("g");
    hab.add_morphism(id_tag("f"), "f", "f");
    hab.add_morphism(id_tag("g"), "g", "g");
    hab.add_morphism("al", "f", "g");
    hab.identity["f"] = id_tag("f");
    hab.identity["g"] = id_tag("g");
    hab.composition[{id_tag("f"), id_tag("f")}] = id_tag("f");
    hab.composition[{id_tag("g"), id_tag("g")}] = id_tag("g");
    hab.composition[{"al", id_tag("f")}] = "al";
    hab.composition[{id_tag("g"), "al"}] = "al";
    hab.normalize();
    k.hom[{"a", "b"}] = std::move(hab);
    k.unit["a"] = "1:a";
    k.unit["b"] = "1:b";
    for (const Id& f : {Id("f"), Id("g")}) {
        k.hcomp1[{f, "1:a"}] = f;
        k.hcomp1[{"1:b", f}] = f;
    }
    k.hcomp1[{"1:a", "1:a"}] = "1:a";
    k.hcomp1[{"1:b", "1:b"}] = "1:b";
    for (const Id& d : {id_tag("f"), id_tag("g"), Id("al")}) {
        k.hcomp2[{d, id_tag("1:a")}] = d;
        k.hcomp2[{id_tag("1:b"), d}] = d;
    }
    k.hcomp2[{id_tag("1:a"), id_tag("1:a")}] = id_tag("1:a");
    k.hcomp2[{id_tag("1:b"), id_tag("1:b")}] = id_tag("1:b");
    k.normalize();
    return k;
}

FiniteCategory underlying_category(const Finite2Category& k) {
    FiniteCategory c;
    c.objects = k.objects;
    for (const auto& [key, h] : k.hom)
        for (const Id& f : h.objects) c.add_morphism(f, key.first, key.second);
    for (const auto& [x, u] : k.unit) c.identity[x] = u;
    c.composition = k.hcomp1;
    c.normalize();
    return c;
}

// ---------------------------------------------------------------------------
// 2-functors

Functor TwoFunctor::local(const Id& a, const Id& b) const {
    Functor f;
    f.src = src.hom_at(a, b);
    f.tgt = tgt.hom_at(obj(a), obj(b));
    for (const Id& c : f.src.objects) f.on_obj[c] = cell1(c);
    for (const Morphism& m : f.src.morphisms) f.on_mor[m.id] = cell2(m.id);
    return f;
}

ValidationReport validate(const TwoFunctor& k) {
    ValidationReport r;
    for (const Id& x : k.src.objects) {
        auto it = k.on_obj.find(x);
        if (it == k.on_obj.end()) {
            r.fail("2functor-object-total", {x});
            continue;
        }
        if (std::find(k.tgt.objects.begin(), k.tgt.objects.end(), it->second) ==
            k.tgt.objects.end())
            r.fail("2functor-object-image", {x, it->second});
    }
    if (!r.pass) return r;
    for (const auto& [key, h] : k.src.hom) {
        Functor loc;
        try {
            loc = k.local(key.first, key.second);
        } catch (const DanglingReference& e) {
            r.fail("2functor-local-total", {key.first, key.second, e.what()});
            continue;
        }
        ValidationReport lr = validate(loc);
        for (Violation& v : lr.violations) {
            v.law = "local/" + v.law;
            v.witness.insert(v.witness.begin(), {key.first, key.second});
        }
        r.merge(lr);
    }
    if (!r.pass) return r;
    for (const Id& x : k.src.objects)
        if (k.cell1(k.src.unit_on(x)) != k.tgt.unit_on(k.obj(x)))
            r.fail("2functor-unit", {x});
    for (const auto& [pair, h] : k.src.hcomp1)
        if (k.tgt.hcomp_1(k.cell1(pair.first), k.cell1(pair.second)) != k.cell1(h))
            r.fail("2functor-hcomp1", {pair.first, pair.second});
    for (const auto& [pair, h] : k.src.hcomp2)
        if (k.tgt.hcomp_2(k.cell2(pair.first), k.cell2(pair.second)) != k.cell2(h))
            r.fail("2functor-hcomp2", {pair.first, pair.second});
    return r;
}

TwoFunctor identity_two_functor(const Finite2Category& k) {
    TwoFunctor f;
    f.src = f.tgt = k;
    for (const Id& x : k.objects) f.on_obj[x] = x;
    for (const Id& c : k.all_1cells()) f.on1[c] = c;
    for (const Id& d : k.all_2cells()) f.on2[d] = d;
    return f;
}

TwoFunctor compose_two_functors(const TwoFunctor& g, const TwoFunctor& f) {
    if (!(f.tgt == g.src)) throw ShapeMismatch("compose_two_functors: middle mismatch");
    TwoFunctor h;
    h.src = f.src;
    h.tgt = g.tgt;
    for (const auto& [x, y] : f.on_obj) h.on_obj[x] = g.obj(y);
    for (const auto& [c, d] : f.on1) h.on1[c] = g.cell1(d);
    for (const auto& [c, d] : f.on2) h.on2[c] = g.cell2(d);
    return h;
}

Functor underlying_functor(const TwoFunctor& k) {
    Functor f;
    f.src = underlying_category(k.src);
    f.tgt = underlying_category(k.tgt);
    f.on_obj = k.on_obj;
    f.on_mor = k.on1;
    return f;
}

TwoFunctor dualize(const TwoFunctor& k, DualMode mode) {
    TwoFunctor d;
    d.src = dualize(k.src, mode);
    d.tgt = dualize(k.tgt, mode);
    d.on_obj = k.on_obj;
    d.on1 = k.on1;
    d.on2 = k.on2;
    return d;
}

std::vector<TwoFunctor> enumerate_two_functors(const Finite2Category& k,
                                               const Finite2Category& l,
                                               const Limits& limits) {
    // Slots: objects, then non-unit 1-cells, then non-identity 2-cells.
    std::vector<Id> obj_slots = k.objects;
    std::set<Id> units;
    for (const auto& [x, u] : k.unit) units.insert(u);
    std::vector<Id> cell1_slots;
    for (const Id& c : k.all_1cells())
        if (!units.count(c)) cell1_slots.push_back(c);
    std::vector<Id> cell2_slots;
    std::map<Id, std::pair<Id, Id>> home1, home2;  // cell -> (a,b)
    for (const auto& [key, h] : k.hom) {
        for (const Id& c : h.objects) home1[c] = key;
        for (const Morphism& m : h.morphisms) {
            home2[m.id] = key;
            if (!h.is_identity(m.id)) cell2_slots.push_back(m.id);
        }
    }
    std::sort(cell2_slots.begin(), cell2_slots.end());

    std::map<Id, std::size_t> oi, c1i, c2i;
    for (std::size_t i = 0; i < obj_slots.size(); ++i) oi[obj_slots[i]] = i;
    for (std::size_t i = 0; i < cell1_slots.size(); ++i) c1i[cell1_slots[i]] = i;
    for (std::size_t i = 0; i < cell2_slots.size(); ++i) c2i[cell2_slots[i]] = i;
    std::size_t nobj = obj_slots.size(), nc1 = cell1_slots.size();

    std::vector<Id> l_1cells = l.all_1cells();
    std::vector<Id> l_2cells = l.all_2cells();
    std::vector<std::vector<Id>> slots;
    for (std::size_t i = 0; i < nobj; ++i) slots.push_back(l.objects);
    for (std::size_t i = 0; i < nc1; ++i) slots.push_back(l_1cells);
    for (std::size_t i = 0; i < cell2_slots.size(); ++i) slots.push_back(l_2cells);

    auto img1 = [&](const std::vector<Id>& chosen, const Id& c) -> std::optional<Id> {
        if (units.count(c)) {
            std::size_t o = oi.at(home1.at(c).first);
            if (o < chosen.size()) return l.unit_on(chosen[o]);
            return std::nullopt;
        }
        std::size_t i = nobj + c1i.at(c);
        if (i < chosen.size()) return chosen[i];
        return std::nullopt;
    };
    auto img2 = [&](const std::vector<Id>& chosen, const Id& d) -> std::optional<Id> {
        auto home = home2.at(d);
        const FiniteCategory& h = k.hom_at(home.first, home.second);
        if (h.is_identity(d)) {
            auto f = img1(chosen, h.src(d));
            if (f) return l.id2(*f);
            return std::nullopt;
        }
        std::size_t i = nobj + nc1 + c2i.at(d);
        if (i < chosen.size()) return chosen[i];
        return std::nullopt;
    };

    auto accept = [&](std::size_t i, const std::vector<Id>& chosen) {
        if (i < nobj) return true;
        if (i < nobj + nc1) {
            const Id& c = cell1_slots[i - nobj];
            auto [a, b] = home1.at(c);
            auto lh = l.cell1_home(chosen[i]);
            if (lh.first != chosen[oi.at(a)] || lh.second != chosen[oi.at(b)]) return false;
            for (const auto& [pair, h] : k.hcomp1) {
                auto g = img1(chosen, pair.first);
                auto f = img1(chosen, pair.second);
                auto hh = img1(chosen, h);
                if (g && f && hh && l.hcomp_1(*g, *f) != *hh) return false;
            }
            return true;
        }
        const Id& d = cell2_slots[i - nobj - nc1];
        auto [a, b] = home2.at(d);
        const FiniteCategory& h = k.hom_at(a, b);
        auto fs = img1(chosen, h.src(d));
        auto ft = img1(chosen, h.tgt(d));
        if (!fs || !ft) return false;
        auto lh = l.cell2_home(chosen[i]);
        if (l.hom_at(lh.first, lh.second).src(chosen[i]) != *fs ||
            l.hom_at(lh.first, lh.second).tgt(chosen[i]) != *ft)
            return false;
        // vertical composites and horizontal composites decided so far
        for (const auto& [key, hc] : k.hom)
            for (const auto& [pair, comp] : hc.composition) {
                auto x = img2(chosen, pair.first);
                auto y = img2(chosen, pair.second);
                auto z = img2(chosen, comp);
                if (x && y && z && l.vcomp(*x, *y) != *z) return false;
            }
        for (const auto& [pair, comp] : k.hcomp2) {
            auto x = img2(chosen, pair.first);
            auto y = img2(chosen, pair.second);
            auto z = img2(chosen, comp);
            if (x && y && z && l.hcomp_2(*x, *y) != *z) return false;
        }
        return true;
    };

    std::vector<TwoFunctor> out;
    auto emit = [&](const std::vector<Id>& chosen) {
        TwoFunctor f;
        f.src = k;
        f.tgt = l;
        for (std::size_t i = 0; i < nobj; ++i) f.on_obj[obj_slots[i]] = chosen[i];
        for (const auto& [c, home] : home1) f.on1[c] = *img1(chosen, c);
        for (const auto& [d, home] : home2) f.on2[d] = *img2(chosen, d);
        out.push_back(std::move(f));
    };
    backtrack(slots, accept, emit, limits.max_candidates);
    return out;
}

// ---------------------------------------------------------------------------

ValidationReport validate_entity(const FiniteCategory& e) { return validate(e); }
ValidationReport validate_entity(const Functor& e) { return validate(e); }
ValidationReport validate_entity(const NaturalTransformation& e) { return validate(e); }
ValidationReport validate_entity(const Finite2Category& e) { return validate(e); }
ValidationReport validate_entity(const TwoFunctor& e) { return validate(e); }

}  // namespace cat2::kernel
