#include "cat2/comma.hpp"

#include <functional>

namespace cat2::comma {

namespace {

Id obj_tag(const Id& a, const Id& b, const Id& h) { return a + "|" + b + "|" + h; }
Id one_tag(const Id& a, const Id& b, const Id& phi, const Id& h, const Id& h2) {
    return a + "|" + b + "|" + phi + "|" + h + "|" + h2;
}
Id two_tag(const Id& al, const Id& be, const Id& s, const Id& t) {
    return al + "|" + be + "|" + s + "|" + t;
}

Id point_tag(const Id& t) { return "*|" + t; }

}  // namespace

CommaResult lax_comma(const TwoFunctor& f, const TwoFunctor& g, const Limits& limits) {
    if (!(f.tgt == g.tgt)) throw ShapeMismatch("lax comma: targets differ");
    const Finite2Category& K = f.tgt;
    const Finite2Category& A = f.src;
    const Finite2Category& B = g.src;

    CommaResult out;
    Finite2Category& total = out.total;
    for (const Id& a0 : A.objects)
        for (const Id& b0 : B.objects)
            for (const Id& h : K.cells1(f.obj(a0), g.obj(b0))) {
                Id t = obj_tag(a0, b0, h);
                total.objects.push_back(t);
                out.obj_data[t] = {a0, b0, h};
            }
    total.normalize();

    std::size_t n1 = 0, n2 = 0;
    for (const Id& t1 : total.objects)
        for (const Id& t2 : total.objects) {
            const auto& [a0, b0, h] = out.obj_data.at(t1);
            const auto& [a1, b1, h2] = out.obj_data.at(t2);
            FiniteCategory hc;
            std::vector<Id> ones;
            for (const Id& a : A.cells1(a0, a1))
                for (const Id& b : B.cells1(b0, b1)) {
                    Id s0 = K.hcomp_1(g.cell1(b), h);
                    Id s1 = K.hcomp_1(h2, f.cell1(a));
                    const FiniteCategory& kh = K.hom_at(f.obj(a0), g.obj(b1));
                    for (const Id& phi : kh.hom(s0, s1)) {
                        Id t = one_tag(a, b, phi, h, h2);
                        hc.add_object(t);
                        out.one_data[t] = {a, b, phi, h, h2};
                        ones.push_back(t);
                        if (++n1 > limits.max_morphisms)
                            throw SizeExceeded("lax comma: 1-cell count exceeds cap");
                    }
                }
            const FiniteCategory& kh = K.hom_at(f.obj(a0), g.obj(b1));
            for (const Id& s : ones)
                for (const Id& t : ones) {
                    const auto& sd = out.one_data.at(s);
                    const auto& td = out.one_data.at(t);
                    for (const Id& al : A.hom_at(a0, a1).hom(sd[0], td[0]))
                        for (const Id& be : B.hom_at(b0, b1).hom(sd[1], td[1])) {
                            // psi (G(beta) * h) = (h' * F(alpha)) phi
                            Id lhs = kh.compose(td[2], K.whisker_r(g.cell2(be), h));
                            Id rhs = kh.compose(K.whisker_l(h2, f.cell2(al)), sd[2]);
                            if (lhs != rhs) continue;
                            Id tag = two_tag(al, be, s, t);
                            hc.add_morphism(tag, s, t);
                            out.two_data[tag] = {al, be, s, t};
                            if (++n2 > limits.max_morphisms)
                                throw SizeExceeded("lax comma: 2-cell count exceeds cap");
                        }
                }
            hc.normalize();
            total.hom[{t1, t2}] = std::move(hc);
        }

    for (const Id& t1 : total.objects) {
        const auto& [a0, b0, h] = out.obj_data.at(t1);
        total.unit[t1] = one_tag(A.unit_on(a0), B.unit_on(b0), K.id2(h), h, h);
    }
    for (auto& [key, hc] : total.hom) {
        for (const Id& c : hc.objects) {
            const auto& d = out.one_data.at(c);
            hc.identity[c] = two_tag(A.id2(d[0]), B.id2(d[1]), c, c);
        }
        for (const Morphism& m2 : hc.morphisms)
            for (const Morphism& m1 : hc.morphisms) {
                if (m1.tgt != m2.src) continue;
                const auto& d2 = out.two_data.at(m2.id);
                const auto& d1 = out.two_data.at(m1.id);
                hc.composition[{m2.id, m1.id}] =
                    two_tag(A.vcomp(d2[0], d1[0]), B.vcomp(d2[1], d1[1]), m1.src, m2.tgt);
            }
    }

    auto compose1 = [&](const Id& cg, const Id& cf) {
        const auto& gd = out.one_data.at(cg);
        const auto& fd = out.one_data.at(cf);
        Id a = A.hcomp_1(gd[0], fd[0]);
        Id b = B.hcomp_1(gd[1], fd[1]);
        Id phi = K.vcomp(K.whisker_r(gd[2], f.cell1(fd[0])),
                         K.whisker_l(g.cell1(gd[1]), fd[2]));
        return one_tag(a, b, phi, fd[3], gd[4]);
    };
    for (const Id& ta : total.objects)
        for (const Id& tb : total.objects)
            for (const Id& tc : total.objects) {
                const FiniteCategory& hab = total.hom_at(ta, tb);
                const FiniteCategory& hbc = total.hom_at(tb, tc);
                for (const Id& cg : hbc.objects)
                    for (const Id& cf : hab.objects)
                        total.hcomp1[{cg, cf}] = compose1(cg, cf);
                for (const Morphism& d2 : hbc.morphisms)
                    for (const Morphism& d1 : hab.morphisms) {
                        const auto& x2 = out.two_data.at(d2.id);
                        const auto& x1 = out.two_data.at(d1.id);
                        total.hcomp2[{d2.id, d1.id}] =
                            two_tag(A.hcomp_2(x2[0], x1[0]), B.hcomp_2(x2[1], x1[1]),
                                    compose1(d2.src, d1.src), compose1(d2.tgt, d1.tgt));
                    }
            }

    out.d0.src = total;
    out.d0.tgt = A;
    out.d1.src = total;
    out.d1.tgt = B;
    for (const auto& [t, d] : out.obj_data) {
        out.d0.on_obj[t] = d[0];
        out.d1.on_obj[t] = d[1];
    }
    for (const auto& [t, d] : out.one_data) {
        out.d0.on1[t] = d[0];
        out.d1.on1[t] = d[1];
    }
    for (const auto& [t, d] : out.two_data) {
        out.d0.on2[t] = d[0];
        out.d1.on2[t] = d[1];
    }

    out.lam.flavor = Flavor::Lax;
    out.lam.src = compose_two_functors(f, out.d0);
    out.lam.tgt = compose_two_functors(g, out.d1);
    for (const auto& [t, d] : out.obj_data) out.lam.component[t] = d[2];
    for (const auto& [t, d] : out.one_data) out.lam.structure[t] = d[2];
    return out;
}

CommaResult oplax_comma(const TwoFunctor& f, const TwoFunctor& g, const Limits& limits) {
    CommaResult c =
        lax_comma(dualize(f, DualMode::Co), dualize(g, DualMode::Co), limits);
    CommaResult out;
    out.total = dualize(c.total, DualMode::Co);
    out.d0 = c.d0;
    out.d0.src = out.total;
    out.d0.tgt = f.src;
    out.d1 = c.d1;
    out.d1.src = out.total;
    out.d1.tgt = g.src;
    out.lam = c.lam;
    out.lam.flavor = Flavor::Oplax;
    out.lam.src = compose_two_functors(f, out.d0);
    out.lam.tgt = compose_two_functors(g, out.d1);
    out.obj_data = c.obj_data;
    out.one_data = c.one_data;
    out.two_data = c.two_data;
    return out;
}

CommaPointResult lax_comma_point(const CatValued2Functor& f, const Limits& limits) {
    const Finite2Category& base = f.base;
    CommaPointResult out;
    Finite2Category& total = out.total;
    for (const Id& b : base.objects)
        for (const Id& x : f.obj(b).objects) {
            Id t = point_tag(elements_object_tag(b, x));
            total.objects.push_back(t);
            out.obj_data[t] = {b, x};
        }
    total.normalize();

    std::size_t n1 = 0, n2 = 0;
    for (const Id& t1 : total.objects)
        for (const Id& t2 : total.objects) {
            auto [b, x] = out.obj_data.at(t1);
            auto [b2, x2] = out.obj_data.at(t2);
            FiniteCategory hc;
            std::vector<Id> ones;
            const FiniteCategory& fib = f.obj(b2);
            for (const Id& g1 : base.cells1(b, b2))
                for (const Id& phi : fib.hom(f.cell1(g1).obj(x), x2)) {
                    Id t = point_tag(elements_1cell_tag(g1, phi, x));
                    hc.add_object(t);
                    out.one_data[t] = {g1, phi, x};
                    ones.push_back(t);
                    if (++n1 > limits.max_morphisms)
                        throw SizeExceeded("point comma: 1-cell count exceeds cap");
                }
            for (const Id& s : ones)
                for (const Id& t : ones) {
                    const auto& sd = out.one_data.at(s);
                    const auto& td = out.one_data.at(t);
                    for (const Id& delta : base.hom_at(b, b2).hom(sd[0], td[0])) {
                        // phi = psi (f(delta) at x)
                        if (sd[1] != fib.compose(td[1], f.cell2(delta).at(x))) continue;
                        Id tag = two_tag("*", delta, s, t);
                        hc.add_morphism(tag, s, t);
                        out.two_data[tag] = {delta, s, t};
                        if (++n2 > limits.max_morphisms)
                            throw SizeExceeded("point comma: 2-cell count exceeds cap");
                    }
                }
            hc.normalize();
            total.hom[{t1, t2}] = std::move(hc);
        }

    for (const Id& t1 : total.objects) {
        auto [b, x] = out.obj_data.at(t1);
        total.unit[t1] = point_tag(elements_1cell_tag(base.unit_on(b), f.obj(b).id_on(x), x));
    }
    for (auto& [key, hc] : total.hom) {
        for (const Id& c : hc.objects)
            hc.identity[c] = two_tag("*", base.id2(out.one_data.at(c)[0]), c, c);
        for (const Morphism& m2 : hc.morphisms)
            for (const Morphism& m1 : hc.morphisms) {
                if (m1.tgt != m2.src) continue;
                Id d = base.vcomp(out.two_data.at(m2.id)[0], out.two_data.at(m1.id)[0]);
                hc.composition[{m2.id, m1.id}] = two_tag("*", d, m1.src, m2.tgt);
            }
    }
    auto compose1 = [&](const Id& cg, const Id& cf, const Id& tc) {
        const auto& gd = out.one_data.at(cg);
        const auto& fd = out.one_data.at(cf);
        Id g1 = base.hcomp_1(gd[0], fd[0]);
        Id phi = f.obj(out.obj_data.at(tc).first)
                     .compose(gd[1], f.cell1(gd[0]).mor(fd[1]));
        return point_tag(elements_1cell_tag(g1, phi, fd[2]));
    };
    for (const Id& ta : total.objects)
        for (const Id& tb : total.objects)
            for (const Id& tc : total.objects) {
                const FiniteCategory& hab = total.hom_at(ta, tb);
                const FiniteCategory& hbc = total.hom_at(tb, tc);
                for (const Id& cg : hbc.objects)
                    for (const Id& cf : hab.objects)
                        total.hcomp1[{cg, cf}] = compose1(cg, cf, tc);
                for (const Morphism& d2 : hbc.morphisms)
                    for (const Morphism& d1 : hab.morphisms) {
                        Id dd = base.hcomp_2(out.two_data.at(d2.id)[0],
                                             out.two_data.at(d1.id)[0]);
                        total.hcomp2[{d2.id, d1.id}] =
                            two_tag("*", dd, compose1(d2.src, d1.src, tc),
                                    compose1(d2.tgt, d1.tgt, tc));
                    }
            }

    Finite2Category pt = terminal_2category();
    Id pto = pt.objects.front();
    Id ptu = pt.unit_on(pto);
    Id ptd = pt.id2(ptu);
    out.d0.src = total;
    out.d0.tgt = pt;
    out.d1.src = total;
    out.d1.tgt = base;
    for (const auto& [t, d] : out.obj_data) {
        out.d0.on_obj[t] = pto;
        out.d1.on_obj[t] = d.first;
    }
    for (const auto& [t, d] : out.one_data) {
        out.d0.on1[t] = ptu;
        out.d1.on1[t] = d[0];
    }
    for (const auto& [t, d] : out.two_data) {
        out.d0.on2[t] = ptd;
        out.d1.on2[t] = d[0];
    }

    Transformation& lam = out.lam;
    lam.flavor = Flavor::Lax;
    lam.src = constant_diagram(total, terminal_category());
    lam.tgt = precompose(f, out.d1);
    for (const auto& [t, d] : out.obj_data) {
        Functor comp;
        comp.src = terminal_category();
        comp.tgt = f.obj(d.first);
        comp.on_obj = {{"*", d.second}};
        comp.on_mor = {{"id:*", comp.tgt.id_on(d.second)}};
        lam.component[t] = std::move(comp);
    }
    for (const auto& [t, d] : out.one_data) {
        auto home = total.cell1_home(t);
        NaturalTransformation s;
        s.src = compose_functors(lam.tgt.cell1(t), lam.at(home.first));
        s.tgt = compose_functors(lam.at(home.second), lam.src.cell1(t));
        s.component["*"] = d[1];
        lam.structure[t] = std::move(s);
    }
    return out;
}

std::vector<Finite2Category> default_probe_2cats() {
    return {terminal_2category(), locally_discrete(walking_arrow()), walking_2cell()};
}

namespace {

// component and structure tables of the whiskering of a gen2 transformation
// by a 2-functor out of its target
Gen2Transformation whisker_gen2(const TwoFunctor& k, const Gen2Transformation& nu) {
    Gen2Transformation out;
    out.flavor = nu.flavor;
    out.src = compose_two_functors(k, nu.src);
    out.tgt = compose_two_functors(k, nu.tgt);
    for (const auto& [x, c] : nu.component) out.component[x] = k.cell1(c);
    for (const auto& [m, d] : nu.structure) out.structure[m] = k.cell2(d);
    return out;
}

bool gen2_strict(const Gen2Transformation& t) {
    const Finite2Category& k = t.src.tgt;
    for (const auto& [m, d] : t.structure) {
        auto home = k.cell2_home(d);
        if (!k.hom_at(home.first, home.second).is_identity(d)) return false;
    }
    return true;
}

bool same_maps(const TwoFunctor& a, const TwoFunctor& b) {
    return a.on_obj == b.on_obj && a.on1 == b.on1 && a.on2 == b.on2;
}

}  // namespace

ValidationReport check_lax_comma_object(const CatValued2Functor& f, const CommaPointResult& c,
                                        const std::vector<Finite2Category>& probes,
                                        const Limits& limits) {
    ValidationReport r;
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        const Finite2Category& M = probes[pi];
        std::string pn = "probe-" + std::to_string(pi);
        std::vector<TwoFunctor> vs = enumerate_two_functors(M, c.total, limits);
        std::vector<TwoFunctor> qs = enumerate_two_functors(M, f.base, limits);
        std::vector<TwoFunctor> qv;
        std::vector<Transformation> lamv;
        std::vector<Id> lamv_key;
        for (const TwoFunctor& v : vs) {
            qv.push_back(compose_two_functors(c.d1, v));
            lamv.push_back(paste(c.lam, v, Side::Pre));
            lamv_key.push_back(trans_key(lamv.back()));
        }

        // (i) one-dimensional: each lax cone factors through a unique strict V
        CatValued2Functor d1m = constant_diagram(M, terminal_category());
        std::size_t cones = 0;
        for (const TwoFunctor& q : qs) {
            std::vector<Transformation> gammas = enumerate_transformations(
                d1m, precompose(f, q), Flavor::Lax, std::nullopt, limits);
            for (const Transformation& gamma : gammas) {
                ++cones;
                Id gk = trans_key(gamma);
                std::size_t count = 0;
                for (std::size_t i = 0; i < vs.size(); ++i)
                    if (same_maps(qv[i], q) && lamv_key[i] == gk) ++count;
                if (count == 0)
                    r.fail(pn + "/one-dim-existence", {gk});
                else if (count > 1)
                    r.fail(pn + "/one-dim-uniqueness", {gk});
            }
        }
        r.notes.push_back(pn + ": " + std::to_string(cones) + " cones, " +
                          std::to_string(vs.size()) + " strict functors into the comma");

        // (ii) and (iii) per ordered pair of strict functors; a candidate that
        // is not actually a comma of f can make the pastings ill typed, which
        // is reported rather than thrown so the remaining probes still run
        std::size_t twos = 0, threes = 0;
        try {
        for (std::size_t vi = 0; vi < vs.size(); ++vi)
            for (std::size_t wi = 0; wi < vs.size(); ++wi) {
                const TwoFunctor& v = vs[vi];
                const TwoFunctor& w = vs[wi];
                std::vector<Gen2Transformation> nus = enumerate_gen2_transformations(
                    v, w, Flavor::Lax, std::nullopt, limits);
                std::vector<Gen2Transformation> nu_down;
                std::vector<Id> nu_ikey;
                for (const Gen2Transformation& nu : nus) {
                    nu_down.push_back(whisker_gen2(c.d1, nu));
                    nu_ikey.push_back(modif_key(interchange_modification(nu, c.lam)));
                }
                std::vector<Gen2Transformation> deltas = enumerate_gen2_transformations(
                    qv[vi], qv[wi], Flavor::Lax, std::nullopt, limits);
                for (const Gen2Transformation& delta : deltas) {
                    Transformation s = vcompose(apply(f, delta), lamv[vi]);
                    std::vector<Modification> xis =
                        enumerate_modifications(s, lamv[wi], limits);
                    for (const Modification& xi : xis) {
                        ++twos;
                        Id xk = modif_key(xi);
                        std::size_t count = 0, hit = 0;
                        for (std::size_t ni = 0; ni < nus.size(); ++ni)
                            if (nu_down[ni].component == delta.component &&
                                nu_down[ni].structure == delta.structure &&
                                nu_ikey[ni] == xk) {
                                ++count;
                                hit = ni;
                            }
                        if (count == 0)
                            r.fail(pn + "/two-dim-existence", {xk});
                        else if (count > 1)
                            r.fail(pn + "/two-dim-uniqueness", {xk});
                        else if (gen2_strict(delta) && !gen2_strict(nus[hit]))
                            r.fail(pn + "/strictness-restriction", {xk});
                    }
                }

                // (iii) modifications over a prescribed projection image
                for (const Gen2Transformation& nu : nus)
                    for (const Gen2Transformation& om : nus) {
                        Gen2Transformation dnu = whisker_gen2(c.d1, nu);
                        Gen2Transformation dom = whisker_gen2(c.d1, om);
                        // all candidate component families for Psi
                        std::vector<Id> objs = M.objects;
                        std::map<Id, Id> psi;
                        std::function<void(std::size_t)> rec = [&](std::size_t i) {
                            if (i == objs.size()) {
                                Gen2Modification pm{dnu, dom, psi};
                                if (!check_modification(pm).pass) return;
                                ++threes;
                                // the pointwise filling equation
                                bool eq = true;
                                for (const Id& x : objs) {
                                    Id hv = c.lam.at(v.obj(x)).obj("*");
                                    Id phin = c.lam.str(nu.at(x)).component.at("*");
                                    Id phio = c.lam.str(om.at(x)).component.at("*");
                                    const FiniteCategory& fib =
                                        f.obj(dom.tgt.obj(x));
                                    if (phin !=
                                        fib.compose(phio, f.cell2(psi.at(x)).at(hv)))
                                        eq = false;
                                }
                                // candidate liftings
                                std::map<Id, Id> th;
                                std::size_t found = 0;
                                std::function<void(std::size_t)> lift =
                                    [&](std::size_t j) {
                                        if (j == objs.size()) {
                                            Gen2Modification tm{nu, om, th};
                                            if (check_modification(tm).pass) ++found;
                                            return;
                                        }
                                        const Id& x = objs[j];
                                        auto home = c.total.cell1_home(nu.at(x));
                                        for (const Morphism& d :
                                             c.total.hom_at(home.first, home.second)
                                                 .morphisms) {
                                            if (d.src != nu.at(x) || d.tgt != om.at(x))
                                                continue;
                                            if (c.d1.cell2(d.id) != psi.at(x)) continue;
                                            th[x] = d.id;
                                            lift(j + 1);
                                            th.erase(x);
                                        }
                                    };
                                lift(0);
                                if (eq && found != 1)
                                    r.fail(pn + "/three-dim-uniqueness", {});
                                if (!eq && found != 0)
                                    r.fail(pn + "/three-dim-spurious", {});
                            } else {
                                const Id& x = objs[i];
                                const FiniteCategory& bh =
                                    f.base.hom_at(qv[vi].obj(x), qv[wi].obj(x));
                                for (const Id& d : bh.hom(dnu.at(x), dom.at(x))) {
                                    psi[x] = d;
                                    rec(i + 1);
                                    psi.erase(x);
                                }
                            }
                        };
                        rec(0);
                    }
            }
        } catch (const SizeExceeded&) {
            throw;
        } catch (const std::exception& ex) {
            r.fail(pn + "/ill-typed-pasting", {ex.what()});
        }
        r.notes.push_back(pn + ": " + std::to_string(twos) + " two-dimensional and " +
                          std::to_string(threes) + " three-dimensional instances");
    }
    return r;
}

ValidationReport elements_lax_comma_iso(const CatValued2Functor& f, const Limits& limits) {
    ElementsResult e = elements_op(f, limits);
    CommaPointResult c = lax_comma_point(f, limits);
    ValidationReport r;

    std::map<std::pair<Id, Id>, Id> robj;
    std::map<std::array<Id, 3>, Id> rone;
    std::map<std::array<Id, 3>, Id> rtwo;
    for (const auto& [t, d] : c.obj_data) robj[d] = t;
    for (const auto& [t, d] : c.one_data) rone[d] = t;
    for (const auto& [t, d] : c.two_data) rtwo[d] = t;

    TwoFunctor t;
    t.src = e.total;
    t.tgt = c.total;
    for (const auto& [tag, d] : e.obj_data) {
        auto it = robj.find(d);
        if (it == robj.end()) {
            r.fail("presentation-mismatch-object", {tag});
            continue;
        }
        t.on_obj[tag] = it->second;
    }
    for (const auto& [tag, d] : e.one_data) {
        auto it = rone.find(d);
        if (it == rone.end()) {
            r.fail("presentation-mismatch-1cell", {tag});
            continue;
        }
        t.on1[tag] = it->second;
    }
    if (!r.pass) return r;
    for (const auto& [tag, d] : e.two_data) {
        auto it = rtwo.find({d[0], t.on1.at(d[1]), t.on1.at(d[2])});
        if (it == rtwo.end()) {
            r.fail("presentation-mismatch-2cell", {tag});
            continue;
        }
        t.on2[tag] = it->second;
    }
    if (!r.pass) return r;

    r.merge(iso_of_2categories(t));
    TwoFunctor proj = compose_two_functors(c.d1, t);
    if (!same_maps(proj, e.projection)) r.fail("projection-square", {});
    Transformation carried = paste(c.lam, t, Side::Pre);
    if (trans_key(carried) != trans_key(canonical_lambda(f, e)))
        r.fail("lambda-transport", {});
    r.notes.push_back(std::to_string(c.total.objects.size()) + " objects, " +
                      std::to_string(c.total.all_1cells().size()) + " 1-cells identified");
    return r;
}

bool opcartesian_1cell(const TwoFunctor& k, const Id& w) {
    auto [e, e2] = k.src.cell1_home(w);
    Id u = k.cell1(w);
    for (const Id& e3 : k.src.objects)
        for (const Id& v : k.tgt.cells1(k.obj(e2), k.obj(e3))) {
            Id vu = k.tgt.hcomp_1(v, u);
            for (const Id& w2 : k.src.cells1(e, e3)) {
                if (k.cell1(w2) != vu) continue;
                std::size_t lifts = 0;
                for (const Id& vb : k.src.cells1(e2, e3))
                    if (k.cell1(vb) == v && k.src.hcomp_1(vb, w) == w2) ++lifts;
                if (lifts != 1) return false;
            }
        }
    return true;
}

namespace {

bool projection_square(ValidationReport& r, const TwoFunctor& h,
                       const SplitDiscrete2Opfib& p, const SplitDiscrete2Opfib& q) {
    if (!(h.src == p.k.src) || !(h.tgt == q.k.src) ||
        !same_maps(compose_two_functors(q.k, h), p.k)) {
        r.fail("projection-square", {});
        return false;
    }
    return true;
}

}  // namespace

ValidationReport cartesian_functor_check(const TwoFunctor& h, const SplitDiscrete2Opfib& p,
                                         const SplitDiscrete2Opfib& q) {
    ValidationReport r;
    if (!projection_square(r, h, p, q)) return r;
    for (const Id& w : p.k.src.all_1cells())
        if (opcartesian_1cell(p.k, w) && !opcartesian_1cell(q.k, h.cell1(w)))
            r.fail("opcartesian-image", {w, h.cell1(w)});
    return r;
}

ValidationReport cleavage_preserving_check(const TwoFunctor& h, const SplitDiscrete2Opfib& p,
                                           const SplitDiscrete2Opfib& q) {
    ValidationReport r;
    if (!projection_square(r, h, p, q)) return r;
    for (const auto& [key, lift] : p.cleavage)
        if (h.cell1(lift) != q.lift(h.obj(key.first), key.second))
            r.fail("chosen-lift", {key.first, key.second});
    return r;
}

namespace {

Id two_functor_key(const TwoFunctor& h) {
    Id s = "[";
    for (const auto& [k, v] : h.on_obj) s += k + ">" + v + ";";
    s += "/";
    for (const auto& [k, v] : h.on1) s += k + ">" + v + ";";
    s += "/";
    for (const auto& [k, v] : h.on2) s += k + ">" + v + ";";
    return s + "]";
}

Id gen2_key(const Gen2Transformation& t) {
    Id s = two_functor_key(t.src) + "=>" + two_functor_key(t.tgt) + "@{";
    for (const auto& [k, v] : t.component) s += k + ">" + v + ";";
    s += "||";
    for (const auto& [k, v] : t.structure) s += k + ">" + v + ";";
    return s + "}";
}

}  // namespace

ValidationReport equivalence_check(const CatValued2Functor& f, const CatValued2Functor& g,
                                   Flavor flavor, const Limits& limits) {
    if (flavor != Flavor::Lax && flavor != Flavor::Pseudo && flavor != Flavor::Strict)
        throw FlavorMismatch("equivalence_check: lax, pseudo or strict only");
    if (!(f.base == g.base)) throw ShapeMismatch("equivalence_check: bases differ");
    ValidationReport r;
    ElementsResult ef = elements_op(f, limits);
    ElementsResult eg = elements_op(g, limits);
    HomCategoryResult hc = hom_category_full(f, g, flavor, std::nullopt, limits);

    std::map<Id, TwoFunctor> slice;
    for (TwoFunctor& h : enumerate_two_functors(ef.total, eg.total, limits)) {
        if (!same_maps(compose_two_functors(eg.projection, h), ef.projection)) continue;
        if (flavor == Flavor::Pseudo &&
            !cartesian_functor_check(h, ef.opfib, eg.opfib).pass)
            continue;
        if (flavor == Flavor::Strict &&
            !cleavage_preserving_check(h, ef.opfib, eg.opfib).pass)
            continue;
        slice.emplace(two_functor_key(h), std::move(h));
    }

    std::set<Id> slice_morphs;
    for (const auto& [k1, h1] : slice)
        for (const auto& [k2, h2] : slice)
            for (const Gen2Transformation& nu : enumerate_gen2_transformations(
                     h1, h2, Flavor::Strict, std::nullopt, limits)) {
                bool over = true;
                for (const auto& [x, c] : nu.component)
                    if (eg.projection.cell1(c) !=
                        f.base.unit_on(ef.projection.obj(x)))
                        over = false;
                if (over) slice_morphs.insert(gen2_key(nu));
            }

    r.notes.push_back("hom side " + std::to_string(hc.cat.objects.size()) + "/" +
                      std::to_string(hc.cat.morphisms.size()) + ", slice side " +
                      std::to_string(slice.size()) + "/" +
                      std::to_string(slice_morphs.size()));

    std::set<Id> obj_image;
    for (const auto& [key, phi] : hc.objects) {
        TwoFunctor h = elements_map(phi, ef, eg);
        Id hk = two_functor_key(h);
        if (!slice.count(hk))
            throw ComparisonFailure("equivalence_check: image functor missing for " + key);
        obj_image.insert(hk);
    }
    if (obj_image.size() != hc.objects.size()) r.fail("object-injectivity", {});
    if (obj_image.size() != slice.size()) r.fail("object-surjectivity", {});

    std::set<Id> mor_image;
    for (const auto& [key, theta] : hc.morphisms) {
        Gen2Transformation nu = elements_2map(theta, ef, eg);
        Id nk = gen2_key(nu);
        if (!slice_morphs.count(nk))
            throw ComparisonFailure("equivalence_check: image transformation missing for " +
                                    key);
        mor_image.insert(nk);
    }
    if (mor_image.size() != hc.morphisms.size()) r.fail("morphism-injectivity", {});
    if (mor_image.size() != slice_morphs.size()) r.fail("morphism-surjectivity", {});
    return r;
}

}  // namespace cat2::comma
