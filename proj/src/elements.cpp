#include "cat2/elements.hpp"

namespace cat2::elements {

Id elements_object_tag(const Id& b, const Id& x) { return b + "|" + x; }
Id elements_1cell_tag(const Id& f, const Id& alpha, const Id& x) {
    return f + "|" + alpha + "|" + x;
}
Id elements_2cell_tag(const Id& delta, const Id& src1, const Id& tgt1) {
    return delta + "|" + src1 + "|" + tgt1;
}
Id tag_head(const Id& tag) { return tag.substr(0, tag.find('|')); }

namespace {

// Shared builder for both variants. The per-variant pieces are: which base
// direction a 1-cell uses, which fiber morphisms are admissible, how 1-cells
// compose, and the 2-cell compatibility equation.
struct ElementsBuilder {
    const CatValued2Functor& f;
    bool covariant;
    const Limits& limits;

    const Finite2Category& base() const { return f.base; }

    ElementsResult run() {
        ElementsResult out;
        Finite2Category& total = out.total;
        for (const Id& b : base().objects)
            for (const Id& x : f.obj(b).objects) {
                Id t = elements_object_tag(b, x);
                total.objects.push_back(t);
                out.obj_data[t] = {b, x};
            }
        total.normalize();

        // 1-cells and 2-cells per hom pair
        std::size_t n1 = 0, n2 = 0;
        for (const Id& ta : total.objects)
            for (const Id& tb : total.objects) {
                auto [b, x] = out.obj_data.at(ta);
                auto [b2, x2] = out.obj_data.at(tb);
                FiniteCategory h;
                std::vector<Id> ones;
                const std::vector<Id>& fs =
                    covariant ? base().cells1(b2, b) : base().cells1(b, b2);
                for (const Id& f1 : fs) {
                    const Functor& rf = f.cell1(f1);
                    const FiniteCategory& fib = covariant ? f.obj(b) : f.obj(b2);
                    for (const Morphism& al : fib.morphisms) {
                        bool ok = covariant ? (al.src == x && al.tgt == rf.obj(x2))
                                            : (al.src == rf.obj(x) && al.tgt == x2);
                        if (!ok) continue;
                        Id end = covariant ? x2 : x;
                        Id t = elements_1cell_tag(f1, al.id, end);
                        h.add_object(t);
                        out.one_data[t] = {f1, al.id, end};
                        ones.push_back(t);
                        if (++n1 > limits.max_morphisms)
                            throw SizeExceeded("elements: 1-cell count exceeds cap");
                    }
                }
                // 2-cells: deltas between the base 1-cells meeting the
                // compatibility equation
                for (const Id& s : ones)
                    for (const Id& t : ones) {
                        const auto& sd = out.one_data.at(s);
                        const auto& td = out.one_data.at(t);
                        const FiniteCategory& bh =
                            covariant ? base().hom_at(b2, b) : base().hom_at(b, b2);
                        for (const Id& delta : bh.hom(sd[0], td[0])) {
                            const NaturalTransformation& nd = f.cell2(delta);
                            bool ok;
                            if (covariant) {
                                // beta = W(delta)_{x2} ∘ alpha
                                const FiniteCategory& fib = f.obj(b);
                                ok = td[1] == fib.compose(nd.at(x2), sd[1]);
                            } else {
                                // alpha = beta ∘ F(delta)_x
                                const FiniteCategory& fib = f.obj(b2);
                                ok = sd[1] == fib.compose(td[1], nd.at(x));
                            }
                            if (!ok) continue;
                            Id tag = elements_2cell_tag(delta, s, t);
                            h.add_morphism(tag, s, t);
                            out.two_data[tag] = {delta, s, t};
                            if (++n2 > limits.max_morphisms)
                                throw SizeExceeded("elements: 2-cell count exceeds cap");
                        }
                    }
                h.normalize();
                total.hom[{ta, tb}] = std::move(h);
            }

        // units
        for (const Id& ta : total.objects) {
            auto [b, x] = out.obj_data.at(ta);
            Id u = elements_1cell_tag(base().unit_on(b), f.obj(b).id_on(x), x);
            total.unit[ta] = u;
        }
        // identities and vertical composition inside each hom
        for (auto& [key, h] : total.hom) {
            for (const Id& c : h.objects) {
                Id idd = elements_2cell_tag(base().id2(out.one_data.at(c)[0]), c, c);
                h.identity[c] = idd;
            }
            for (const Morphism& m2 : h.morphisms)
                for (const Morphism& m1 : h.morphisms) {
                    if (m1.tgt != m2.src) continue;
                    Id d = base().vcomp(out.two_data.at(m2.id)[0], out.two_data.at(m1.id)[0]);
                    h.composition[{m2.id, m1.id}] = elements_2cell_tag(d, m1.src, m2.tgt);
                }
        }
        // horizontal composition of 1-cells
        auto compose1 = [&](const Id& cg, const Id& cf, const Id& ta, const Id& tc) {
            const auto& gd = out.one_data.at(cg);
            const auto& fd = out.one_data.at(cf);
            auto [b0, x0] = out.obj_data.at(ta);
            auto [b2, x2] = out.obj_data.at(tc);
            if (covariant) {
                // (g,beta)∘(f,alpha) = (f∘g, W(f)(beta)∘alpha)
                Id f1 = base().hcomp_1(fd[0], gd[0]);
                Id al = f.obj(b0).compose(f.cell1(fd[0]).mor(gd[1]), fd[1]);
                return elements_1cell_tag(f1, al, x2);
            }
            Id f1 = base().hcomp_1(gd[0], fd[0]);
            Id al = f.obj(b2).compose(gd[1], f.cell1(gd[0]).mor(fd[1]));
            return elements_1cell_tag(f1, al, x0);
        };
        for (const Id& ta : total.objects)
            for (const Id& tb : total.objects)
                for (const Id& tc : total.objects) {
                    const FiniteCategory& hab = total.hom_at(ta, tb);
                    const FiniteCategory& hbc = total.hom_at(tb, tc);
                    for (const Id& cg : hbc.objects)
                        for (const Id& cf : hab.objects)
                            total.hcomp1[{cg, cf}] = compose1(cg, cf, ta, tc);
                    for (const Morphism& d2 : hbc.morphisms)
                        for (const Morphism& d1 : hab.morphisms) {
                            Id dd = covariant
                                        ? base().hcomp_2(out.two_data.at(d1.id)[0],
                                                         out.two_data.at(d2.id)[0])
                                        : base().hcomp_2(out.two_data.at(d2.id)[0],
                                                         out.two_data.at(d1.id)[0]);
                            total.hcomp2[{d2.id, d1.id}] = elements_2cell_tag(
                                dd, compose1(d2.src, d1.src, ta, tc),
                                compose1(d2.tgt, d1.tgt, ta, tc));
                        }
                }

        // projection
        out.projection.src = total;
        out.projection.tgt = covariant ? dualize(base(), DualMode::Op) : base();
        for (const auto& [t, bx] : out.obj_data) out.projection.on_obj[t] = bx.first;
        for (const auto& [t, d] : out.one_data) out.projection.on1[t] = d[0];
        for (const auto& [t, d] : out.two_data) out.projection.on2[t] = d[0];

        // marking: the 1-cells whose fiber morphism is an identity
        out.marking.carrier = total;
        for (const auto& [t, d] : out.one_data) {
            auto home = total.cell1_home(t);
            auto [b, x] = out.obj_data.at(covariant ? home.first : home.second);
            if (f.obj(b).is_identity(d[1])) out.marking.marked.insert(t);
        }

        // canonical cleavage: the unique marked lift of each base morphism.
        // Recomputing least opcartesian lifts instead is not split when a
        // fiber contains nonidentity isomorphisms.
        out.opfib.k = covariant ? dualize(out.projection, DualMode::Op) : out.projection;
        {
            const TwoFunctor& k = out.opfib.k;
            for (const Id& e : k.src.objects)
                for (const Id& m : k.tgt.all_1cells()) {
                    auto home = k.tgt.cell1_home(m);
                    if (home.first != k.obj(e)) continue;
                    if (home.first == home.second && m == k.tgt.unit_on(home.first)) {
                        out.opfib.cleavage[{e, m}] = k.src.unit_on(e);
                        continue;
                    }
                    for (const Id& l : k.src.all_1cells())
                        if (k.src.src1(l) == e && k.cell1(l) == m &&
                            out.marking.marked.count(l)) {
                            out.opfib.cleavage[{e, m}] = l;
                            break;
                        }
                }
        }
        return out;
    }
};

}  // namespace

ElementsResult elements_op(const CatValued2Functor& f, const Limits& limits) {
    return ElementsBuilder{f, false, limits}.run();
}

ElementsResult elements_cov(const CatValued2Functor& w, const Limits& limits) {
    return ElementsBuilder{w, true, limits}.run();
}

CatValued2Functor fiber_opposite(const CatValued2Functor& f) {
    CatValued2Functor g;
    g.base = dualize(f.base, DualMode::Co);
    for (const auto& [b, c] : f.on_obj) g.on_obj[b] = opposite_category(c);
    auto opp = [&](const Functor& fn) {
        Functor o;
        o.src = opposite_category(fn.src);
        o.tgt = opposite_category(fn.tgt);
        o.on_obj = fn.on_obj;
        o.on_mor = fn.on_mor;
        return o;
    };
    for (const auto& [c, fn] : f.on1) g.on1[c] = opp(fn);
    for (const auto& [d, nt] : f.on2) {
        NaturalTransformation o;
        o.src = opp(nt.tgt);
        o.tgt = opp(nt.src);
        o.component = nt.component;
        g.on2[d] = std::move(o);
    }
    return g;
}

TwoFunctor elements_map(const Transformation& phi, const ElementsResult& ef,
                        const ElementsResult& eg) {
    const CatValued2Functor& G = phi.tgt;
    TwoFunctor h;
    h.src = ef.total;
    h.tgt = eg.total;
    for (const auto& [t, bx] : ef.obj_data)
        h.on_obj[t] = elements_object_tag(bx.first, phi.at(bx.first).obj(bx.second));
    for (const auto& [t, d] : ef.one_data) {
        auto home = ef.total.cell1_home(t);
        auto [b, x] = ef.obj_data.at(home.first);
        auto [b2, x2] = ef.obj_data.at(home.second);
        // beta = phi_{b2}(alpha) ∘ (phi_{f})_x
        Id beta = G.obj(b2).compose(phi.at(b2).mor(d[1]), phi.str(d[0]).at(x));
        h.on1[t] = elements_1cell_tag(d[0], beta, phi.at(b).obj(x));
    }
    for (const auto& [t, d] : ef.two_data)
        h.on2[t] = elements_2cell_tag(d[0], h.on1.at(d[1]), h.on1.at(d[2]));
    return h;
}

TwoFunctor elements_map(const Transformation& phi) {
    return elements_map(phi, elements_op(phi.src), elements_op(phi.tgt));
}

Gen2Transformation elements_2map(const Modification& theta, const ElementsResult& ef,
                                 const ElementsResult& eg) {
    Gen2Transformation t;
    t.flavor = Flavor::Strict;
    t.src = elements_map(theta.src, ef, eg);
    t.tgt = elements_map(theta.tgt, ef, eg);
    const Finite2Category& base = theta.src.src.base;
    for (const auto& [tag, bx] : ef.obj_data) {
        auto [b, x] = bx;
        Id comp = theta.at(b).at(x);
        t.component[tag] =
            elements_1cell_tag(base.unit_on(b), comp, theta.src.at(b).obj(x));
    }
    for (const Id& c : ef.total.all_1cells()) {
        auto home = ef.total.cell1_home(c);
        t.structure[c] =
            eg.total.id2(eg.total.hcomp_1(t.component.at(home.second), t.src.cell1(c)));
    }
    return t;
}

Gen2Transformation elements_2map(const Modification& theta) {
    return elements_2map(theta, elements_op(theta.src.src), elements_op(theta.src.tgt));
}

Transformation canonical_lambda(const CatValued2Functor& f, const ElementsResult& e) {
    Transformation lam;
    lam.flavor = Flavor::MarkedLax;
    lam.marking = e.marking;
    lam.src = constant_diagram(e.total, terminal_category());
    lam.tgt = precompose(f, e.projection);
    for (const auto& [tag, bx] : e.obj_data) {
        Functor pick;
        pick.src = terminal_category();
        pick.tgt = f.obj(bx.first);
        pick.on_obj["*"] = bx.second;
        pick.on_mor[id_tag("*")] = pick.tgt.id_on(bx.second);
        lam.component[tag] = std::move(pick);
    }
    for (const auto& [tag, d] : e.one_data) {
        auto home = e.total.cell1_home(tag);
        NaturalTransformation s;
        s.src = compose_functors(lam.tgt.cell1(tag), lam.at(home.first));
        s.tgt = compose_functors(lam.at(home.second), lam.src.cell1(tag));
        s.component["*"] = d[1];
        lam.structure[tag] = std::move(s);
    }
    return lam;
}

// ---------------------------------------------------------------------------
// Fibration checks

namespace {

bool is_opcartesian(const Functor& u, const Morphism& l) {
    const FiniteCategory& s = u.src;
    const FiniteCategory& t = u.tgt;
    Id m = u.mor(l.id);
    for (const Morphism& g : s.morphisms) {
        if (g.src != l.src) continue;
        for (const Morphism& h : t.morphisms) {
            if (h.src != t.tgt(m)) continue;
            if (t.compose(h.id, m) != u.mor(g.id)) continue;
            std::size_t count = 0;
            for (const Morphism& w : s.morphisms) {
                if (w.src != l.tgt || w.tgt != g.tgt) continue;
                if (u.mor(w.id) == h.id && s.compose(w.id, l.id) == g.id) ++count;
            }
            if (count != 1) return false;
        }
    }
    return true;
}

}  // namespace

ValidationReport is_opfibration(const Functor& u) {
    ValidationReport r;
    for (const Id& e : u.src.objects)
        for (const Morphism& m : u.tgt.morphisms) {
            if (m.src != u.obj(e)) continue;
            bool found = false;
            for (const Morphism& l : u.src.morphisms) {
                if (l.src != e || u.mor(l.id) != m.id) continue;
                if (is_opcartesian(u, l)) {
                    found = true;
                    break;
                }
            }
            if (!found) r.fail("opcartesian-lift", {e, m.id});
        }
    return r;
}

ValidationReport is_discrete_fibration(const Functor& u) {
    ValidationReport r;
    for (const Id& e : u.src.objects)
        for (const Morphism& m : u.tgt.morphisms) {
            if (m.tgt != u.obj(e)) continue;
            std::size_t count = 0;
            for (const Morphism& l : u.src.morphisms)
                if (l.tgt == e && u.mor(l.id) == m.id) ++count;
            if (count == 0) r.fail("discrete-lift-exists", {e, m.id});
            if (count > 1) r.fail("discrete-lift-unique", {e, m.id});
        }
    return r;
}

ValidationReport is_discrete_2opfibration(const TwoFunctor& k) {
    ValidationReport r;
    ValidationReport c1 = is_opfibration(underlying_functor(k));
    for (Violation& v : c1.violations) v.law = "opfib/" + v.law;
    r.merge(c1);
    for (const Id& e : k.src.objects)
        for (const Id& e2 : k.src.objects) {
            ValidationReport c2 = is_discrete_fibration(k.local(e, e2));
            for (Violation& v : c2.violations) {
                v.law = "local-discrete/" + v.law;
                v.witness.insert(v.witness.begin(), {e, e2});
            }
            r.merge(c2);
        }
    return r;
}

SplitDiscrete2Opfib extract_cleavage(const TwoFunctor& k) {
    SplitDiscrete2Opfib p;
    p.k = k;
    Functor u = underlying_functor(k);
    for (const Id& e : k.src.objects)
        for (const Morphism& m : u.tgt.morphisms) {
            if (m.src != u.obj(e)) continue;
            if (u.tgt.is_identity(m.id)) {
                p.cleavage[{e, m.id}] = k.src.unit_on(e);
                continue;
            }
            bool found = false;
            for (const Morphism& l : u.src.morphisms) {
                if (l.src != e || u.mor(l.id) != m.id) continue;
                if (is_opcartesian(u, l)) {
                    p.cleavage[{e, m.id}] = l.id;
                    found = true;
                    break;  // morphisms are id-sorted, so this is the least
                }
            }
            if (!found)
                throw NotSplit("no opcartesian lift of " + m.id + " at " + e);
        }
    // split closure
    for (const Id& e : k.src.objects)
        for (const auto& [pair, comp] : u.tgt.composition) {
            const Id& g = pair.first;
            const Id& f = pair.second;
            if (u.tgt.src(f) != u.obj(e)) continue;
            Id lf = p.lift(e, f);
            Id e1 = u.src.tgt(lf);
            if (k.src.hcomp_1(p.lift(e1, g), lf) != p.lift(e, comp))
                throw NotSplit("least lifts not closed under composition at (" + e + ", " +
                               f + ", " + g + ")");
        }
    return p;
}

ValidationReport iso_of_2categories(const TwoFunctor& k) {
    ValidationReport r = kernel::validate(k);
    if (!r.pass) return r;
    auto bijection = [&](const std::vector<Id>& dom, const std::vector<Id>& cod,
                         const std::map<Id, Id>& map, const std::string& kind) {
        std::map<Id, Id> seen;
        for (const Id& x : dom) {
            auto [it, fresh] = seen.emplace(map.at(x), x);
            if (!fresh) r.fail("iso-" + kind + "-collision", {it->second, x, map.at(x)});
        }
        for (const Id& y : cod)
            if (!seen.count(y)) r.fail("iso-" + kind + "-not-hit", {y});
    };
    bijection(k.src.objects, k.tgt.objects, k.on_obj, "object");
    bijection(k.src.all_1cells(), k.tgt.all_1cells(), k.on1, "1cell");
    bijection(k.src.all_2cells(), k.tgt.all_2cells(), k.on2, "2cell");
    return r;
}

// ---------------------------------------------------------------------------
// Reconstruction

namespace {

// The unique vertical 1-cell w over a unit with w ∘ along == m.
Id factor_through(const TwoFunctor& k, const Id& along, const Id& m, const Id& unit) {
    const Finite2Category& t = k.src;
    Id from = t.tgt1(along);
    Id to = t.tgt1(m);
    std::vector<Id> hits;
    for (const Id& w : t.cells1(from, to))
        if (k.cell1(w) == unit && t.hcomp_1(w, along) == m) hits.push_back(w);
    if (hits.size() != 1)
        throw NotSplit("factorization through cleavage lift not unique for " + m);
    return hits[0];
}

// The unique 2-cell over delta with the given vertical target.
Id lift_2cell(const TwoFunctor& k, const Id& e, const Id& tgt_cell, const Id& delta) {
    const Finite2Category& t = k.src;
    Id e2 = t.tgt1(tgt_cell);
    std::vector<Id> hits;
    for (const Morphism& d : t.hom_at(e, e2).morphisms)
        if (k.cell2(d.id) == delta && d.tgt == tgt_cell) hits.push_back(d.id);
    if (hits.size() != 1) throw NotSplit("2-cell lift over " + delta + " not unique");
    return hits[0];
}

}  // namespace

ReconstructionResult reconstruct(const SplitDiscrete2Opfib& p, const Limits& limits) {
    const TwoFunctor& k = p.k;
    const Finite2Category& total = k.src;
    const Finite2Category& base = k.tgt;

    ReconstructionResult out;
    CatValued2Functor& fib = out.fiber;
    fib.base = base;

    // fibers: objects over A, 1-cells over the unit of A
    for (const Id& a : base.objects) {
        FiniteCategory c;
        for (const Id& e : total.objects)
            if (k.obj(e) == a) c.add_object(e);
        for (const Id& l : total.all_1cells())
            if (k.cell1(l) == base.unit_on(a))
                c.add_morphism(l, total.src1(l), total.tgt1(l));
        for (const Id& e : c.objects) c.identity[e] = total.unit_on(e);
        c.normalize();
        for (const Morphism& m2 : c.morphisms)
            for (const Morphism& m1 : c.morphisms)
                if (m1.tgt == m2.src)
                    c.composition[{m2.id, m1.id}] = total.hcomp_1(m2.id, m1.id);
        fib.on_obj[a] = std::move(c);
    }

    // reindexing along base 1-cells via cleavage pushforward
    for (const Id& u : base.all_1cells()) {
        auto [a, a2] = base.cell1_home(u);
        Functor fu;
        fu.src = fib.on_obj.at(a);
        fu.tgt = fib.on_obj.at(a2);
        for (const Id& e : fu.src.objects) fu.on_obj[e] = total.tgt1(p.lift(e, u));
        for (const Morphism& l : fu.src.morphisms) {
            Id m = total.hcomp_1(p.lift(l.tgt, u), l.id);
            fu.on_mor[l.id] = factor_through(k, p.lift(l.src, u), m, base.unit_on(a2));
        }
        fib.on1[u] = std::move(fu);
    }

    // 2-cell action via unique local lifts
    for (const Id& d : base.all_2cells()) {
        Id u = base.vsrc(d), v = base.vtgt(d);
        Id a2 = base.cell1_home(u).second;
        NaturalTransformation nt;
        nt.src = fib.on1.at(u);
        nt.tgt = fib.on1.at(v);
        for (const Id& e : nt.src.src.objects) {
            Id gamma = lift_2cell(k, e, p.lift(e, v), d);
            Id m = total.vsrc(gamma);  // a 1-cell e -> v·e over u
            nt.component[e] = factor_through(k, p.lift(e, u), m, base.unit_on(a2));
        }
        fib.on2[d] = std::move(nt);
    }

    // the comparison 2-functor ∫fib -> total
    ElementsResult efib = elements_op(fib, limits);
    TwoFunctor& iso = out.iso;
    iso.src = efib.total;
    iso.tgt = total;
    for (const auto& [tag, bx] : efib.obj_data) iso.on_obj[tag] = bx.second;
    for (const auto& [tag, d] : efib.one_data) {
        // (u, lam) |-> lam ∘ lift(e, u)
        Id e = d[2];
        iso.on1[tag] = total.hcomp_1(d[1], p.lift(e, d[0]));
    }
    for (const auto& [tag, d] : efib.two_data) {
        Id delta = d[0];
        Id src_cell = iso.on1.at(d[1]);
        Id tgt_cell = iso.on1.at(d[2]);
        Id e = total.src1(src_cell);
        Id got = lift_2cell(k, e, tgt_cell, delta);
        if (total.vsrc(got) != src_cell)
            throw NotSplit("reconstruction 2-cell lift has wrong source at " + tag);
        iso.on2[tag] = got;
    }
    return out;
}

ValidationReport reconstruction_roundtrip(const CatValued2Functor& f, const Limits& limits) {
    ValidationReport r;
    ElementsResult e = elements_op(f, limits);
    ReconstructionResult rec = reconstruct(e.opfib, limits);

    ValidationReport fv = validate(rec.fiber);
    for (Violation& v : fv.violations) v.law = "fiber/" + v.law;
    r.merge(fv);

    ValidationReport iv = iso_of_2categories(rec.iso);
    for (Violation& v : iv.violations) v.law = "iso/" + v.law;
    r.merge(iv);
    if (!r.pass) return r;

    // the comparison commutes with the projections
    ElementsResult efib = elements_op(rec.fiber, limits);
    TwoFunctor lhs = compose_two_functors(e.projection, rec.iso);
    if (!(lhs.on_obj == efib.projection.on_obj && lhs.on1 == efib.projection.on1 &&
          lhs.on2 == efib.projection.on2))
        r.fail("projection-commutes", {});

    // fiberwise literal comparison after stripping the object prefix
    for (const Id& b : f.base.objects) {
        Functor strip;
        strip.src = rec.fiber.obj(b);
        strip.tgt = f.obj(b);
        for (const Id& o : strip.src.objects) strip.on_obj[o] = e.obj_data.at(o).second;
        for (const Morphism& m : strip.src.morphisms)
            strip.on_mor[m.id] = e.one_data.at(m.id)[1];
        ValidationReport sv = iso_of_categories(strip);
        for (Violation& v : sv.violations) {
            v.law = "strip/" + v.law;
            v.witness.insert(v.witness.begin(), b);
        }
        r.merge(sv);
        if (!sv.pass) continue;

        // reindexing matches f's after conjugation
        for (const Id& u : f.base.all_1cells()) {
            if (f.base.src1(u) != b) continue;
            Id b2 = f.base.tgt1(u);
            Functor strip2;
            strip2.src = rec.fiber.obj(b2);
            strip2.tgt = f.obj(b2);
            for (const Id& o : strip2.src.objects)
                strip2.on_obj[o] = e.obj_data.at(o).second;
            for (const Morphism& m : strip2.src.morphisms)
                strip2.on_mor[m.id] = e.one_data.at(m.id)[1];
            if (!(compose_functors(strip2, rec.fiber.cell1(u)) ==
                  compose_functors(f.cell1(u), strip)))
                r.fail("reindexing-mismatch", {u});
        }
        for (const Id& d : f.base.all_2cells()) {
            auto home = f.base.cell2_home(d);
            if (home.first != b) continue;
            for (const Id& o : rec.fiber.obj(b).objects) {
                Id got = e.one_data.at(rec.fiber.cell2(d).at(o))[1];
                Id want = f.cell2(d).at(e.obj_data.at(o).second);
                if (got != want) r.fail("2cell-action-mismatch", {d, o});
            }
        }
    }
    return r;
}

}  // namespace cat2::elements
