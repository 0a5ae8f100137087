#include "cat2/limits.hpp"

#include <functional>

namespace cat2::limits {

namespace {

// A functor category materialized together with the data behind its keys.
struct FunctorCatData {
    FiniteCategory cat;
    std::map<Id, Functor> fs;
    std::map<Id, NaturalTransformation> ns;
};

FunctorCatData materialize(const FiniteCategory& c, const FiniteCategory& u,
                           const Limits& limits) {
    FunctorCatData out;
    out.cat = functor_category(c, u, limits);
    std::vector<Functor> fs = enumerate_functors(c, u, limits);
    for (Functor& f : fs) out.fs.emplace(functor_key(f), f);
    for (const auto& [kf, f] : out.fs)
        for (const auto& [kg, g] : out.fs)
            for (NaturalTransformation& t : enumerate_nat_trans(f, g, limits))
                out.ns.emplace(nat_key(t), std::move(t));
    return out;
}

}  // namespace

HomDiagram hom_diagram_cov(const FiniteCategory& l, const CatValued2Functor& f,
                           const Limits& limits) {
    HomDiagram hd;
    const Finite2Category& base = f.base;
    hd.diag.base = base;
    for (const Id& a : base.objects) {
        FunctorCatData data = materialize(l, f.obj(a), limits);
        hd.diag.on_obj[a] = data.cat;
        hd.obj_of_key[a] = std::move(data.fs);
        hd.mor_of_key[a] = std::move(data.ns);
    }
    for (const auto& [key, hc] : base.hom) {
        for (const Id& c : hc.objects) {
            Functor p;
            p.src = hd.diag.obj(key.first);
            p.tgt = hd.diag.obj(key.second);
            for (const auto& [k, g] : hd.obj_of_key.at(key.first))
                p.on_obj[k] = functor_key(compose_functors(f.cell1(c), g));
            for (const auto& [k, n] : hd.mor_of_key.at(key.first))
                p.on_mor[k] = nat_key(whisker_post(f.cell1(c), n));
            hd.diag.on1[c] = std::move(p);
        }
        for (const Morphism& d : hc.morphisms) {
            NaturalTransformation n;
            n.src = hd.diag.cell1(d.src);
            n.tgt = hd.diag.cell1(d.tgt);
            for (const auto& [k, g] : hd.obj_of_key.at(key.first))
                n.component[k] = nat_key(whisker_pre(f.cell2(d.id), g));
            hd.diag.on2[d.id] = std::move(n);
        }
    }
    return hd;
}

HomDiagram hom_diagram_contra(const CatValued2Functor& f, const FiniteCategory& u,
                              const Limits& limits) {
    HomDiagram hd;
    hd.diag.base = dualize(f.base, DualMode::Op);
    for (const Id& a : f.base.objects) {
        FunctorCatData data = materialize(f.obj(a), u, limits);
        hd.diag.on_obj[a] = data.cat;
        hd.obj_of_key[a] = std::move(data.fs);
        hd.mor_of_key[a] = std::move(data.ns);
    }
    // a 1-cell c: a -> b in the original base runs b -> a in the dual and
    // acts by precomposition with f(c)
    for (const auto& [key, hc] : f.base.hom) {
        for (const Id& c : hc.objects) {
            Functor p;
            p.src = hd.diag.obj(key.second);
            p.tgt = hd.diag.obj(key.first);
            for (const auto& [k, h] : hd.obj_of_key.at(key.second))
                p.on_obj[k] = functor_key(compose_functors(h, f.cell1(c)));
            for (const auto& [k, n] : hd.mor_of_key.at(key.second))
                p.on_mor[k] = nat_key(whisker_pre(n, f.cell1(c)));
            hd.diag.on1[c] = std::move(p);
        }
        for (const Morphism& d : hc.morphisms) {
            NaturalTransformation n;
            n.src = hd.diag.cell1(d.src);
            n.tgt = hd.diag.cell1(d.tgt);
            for (const auto& [k, h] : hd.obj_of_key.at(key.second))
                n.component[k] = nat_key(whisker_post(h, f.cell2(d.id)));
            hd.diag.on2[d.id] = std::move(n);
        }
    }
    return hd;
}

namespace {

// Evaluation functor limit -> f(a) at a weight object w0: sends each cylinder
// to its a-component's value at w0.
Functor eval_functor(const HomCategoryResult& hc, const CatValued2Functor& f,
                     const Id& a, const Id& w0) {
    Functor g;
    g.src = hc.cat;
    g.tgt = f.obj(a);
    for (const auto& [key, t] : hc.objects) g.on_obj[key] = t.at(a).obj(w0);
    for (const auto& [key, m] : hc.morphisms) g.on_mor[key] = m.at(a).at(w0);
    return g;
}

struct WeightedLimitFull {
    HomCategoryResult hc;
    HomDiagram hd;
    LimitResult res;
};

// Shared by the strict-cylinder and marked-cone limits: package a cylinder
// category as a LimitResult with the tautological universal cylinder.
WeightedLimitFull package_limit(const CatValued2Functor& w, const CatValued2Functor& f,
                                HomCategoryResult hc, Flavor flavor,
                                std::optional<Marking> marking, const Limits& limits) {
    WeightedLimitFull out;
    out.hc = std::move(hc);
    out.hd = hom_diagram_cov(out.hc.cat, f, limits);

    Transformation uni;
    uni.flavor = flavor;
    uni.marking = std::move(marking);
    uni.src = w;
    uni.tgt = out.hd.diag;
    for (const Id& a : f.base.objects) {
        const FiniteCategory& wa = w.obj(a);
        Functor comp;
        comp.src = wa;
        comp.tgt = out.hd.diag.obj(a);
        std::map<Id, Functor> evals;
        for (const Id& w0 : wa.objects) {
            evals[w0] = eval_functor(out.hc, f, a, w0);
            comp.on_obj[w0] = functor_key(evals.at(w0));
        }
        for (const Morphism& om : wa.morphisms) {
            NaturalTransformation n;
            n.src = evals.at(om.src);
            n.tgt = evals.at(om.tgt);
            for (const auto& [key, t] : out.hc.objects)
                n.component[key] = t.at(a).mor(om.id);
            comp.on_mor[om.id] = nat_key(n);
        }
        uni.component[a] = std::move(comp);
    }
    for (const auto& [key, hcb] : f.base.hom)
        for (const Id& c : hcb.objects) {
            const Id& a = key.first;
            const Id& b = key.second;
            NaturalTransformation s;
            s.src = compose_functors(out.hd.diag.cell1(c), uni.at(a));
            s.tgt = compose_functors(uni.at(b), w.cell1(c));
            for (const Id& w0 : w.obj(a).objects) {
                NaturalTransformation sn;
                sn.src = compose_functors(
                    f.cell1(c), out.hd.obj_of_key.at(a).at(uni.at(a).obj(w0)));
                sn.tgt = out.hd.obj_of_key.at(b).at(uni.at(b).obj(w.cell1(c).obj(w0)));
                for (const auto& [tkey, t] : out.hc.objects)
                    sn.component[tkey] = t.str(c).at(w0);
                s.component[w0] = nat_key(sn);
            }
            uni.structure[c] = std::move(s);
        }
    out.res.limit = out.hc.cat;
    out.res.universal = uni;
    out.res.report = check_transformation(uni);
    return out;
}

WeightedLimitFull weighted_limit_full(const CatValued2Functor& w,
                                      const CatValued2Functor& f, const Limits& limits) {
    if (!(w.base == f.base)) throw ShapeMismatch("weight and diagram bases differ");
    return package_limit(w, f, hom_category_full(w, f, Flavor::Strict, std::nullopt, limits),
                         Flavor::Strict, std::nullopt, limits);
}

}  // namespace

LimitResult weighted_limit(const CatValued2Functor& w, const CatValued2Functor& f,
                           const Limits& limits) {
    return weighted_limit_full(w, f, limits).res;
}

LimitResult marked_lax_conical_limit(const Marking& m, const CatValued2Functor& f,
                                     const Limits& limits) {
    if (!(m.carrier == f.base)) throw ShapeMismatch("marking carrier is not the base");
    CatValued2Functor d1 = constant_diagram(f.base, terminal_category());
    return package_limit(d1, f,
                         hom_category_full(d1, f, Flavor::MarkedLax, m, limits),
                         Flavor::MarkedLax, m, limits)
        .res;
}

CatValued2Functor weight_laxn(const CatValued2Functor& z, const Limits& limits) {
    ElementsResult e = elements_op(z, limits);
    CatValued2Functor w;
    w.base = e.total;
    for (const auto& [tag, bx] : e.obj_data)
        w.on_obj[tag] = slice_category(z.obj(bx.first), bx.second);
    for (const auto& [tag, data] : e.one_data) {
        auto [t1, t2] = e.total.cell1_home(tag);
        const auto& [g, beta, x] = data;
        const auto& [b1, x1] = e.obj_data.at(t1);
        const auto& [b2, x2] = e.obj_data.at(t2);
        const FiniteCategory& c1 = z.obj(b1);
        const FiniteCategory& c2 = z.obj(b2);
        const Functor& zg = z.cell1(g);
        Functor p;
        p.src = w.on_obj.at(t1);
        p.tgt = w.on_obj.at(t2);
        // slice object: a morphism alpha with target x1; image beta ∘ Z(g)(alpha)
        for (const Id& alpha : p.src.objects)
            p.on_obj[alpha] = c2.compose(beta, zg.mor(alpha));
        // slice morphism from alpha to alpha2 is a triangle gamma
        for (const Id& alpha : p.src.objects)
            for (const Id& alpha2 : p.src.objects)
                for (const Id& gamma : c1.hom(c1.src(alpha), c1.src(alpha2)))
                    if (c1.compose(alpha2, gamma) == alpha)
                        p.on_mor[pair_tag(gamma, alpha2)] =
                            pair_tag(zg.mor(gamma), p.on_obj.at(alpha2));
        w.on1[tag] = std::move(p);
    }
    for (const auto& [tag, data] : e.two_data) {
        const auto& [delta, c1tag, c2tag] = data;
        auto [t1, t2] = e.total.cell1_home(c1tag);
        const auto& [b1, x1] = e.obj_data.at(t1);
        const FiniteCategory& c1 = z.obj(b1);
        NaturalTransformation n;
        n.src = w.on1.at(c1tag);
        n.tgt = w.on1.at(c2tag);
        for (const Id& alpha : w.on_obj.at(t1).objects)
            n.component[alpha] =
                pair_tag(z.cell2(delta).at(c1.src(alpha)), n.tgt.obj(alpha));
        w.on2[tag] = std::move(n);
    }
    return w;
}

CatValued2Functor weight_oplaxn(const CatValued2Functor& z, const Limits& limits) {
    return fiber_opposite(weight_laxn(fiber_opposite(z), limits));
}

namespace {

// The marked cone over f∘P induced by a strict cylinder w => f: component at
// (A, X) is phi_A(X), structure on (u, alpha) is phi_B(alpha).
Transformation conical_cone(const Transformation& phi, const ElementsResult& e,
                            const CatValued2Functor& d1e, const CatValued2Functor& fp) {
    Transformation cone;
    cone.flavor = Flavor::MarkedLax;
    cone.marking = e.marking;
    cone.src = d1e;
    cone.tgt = fp;
    for (const auto& [tag, bx] : e.obj_data) {
        Functor comp;
        comp.src = d1e.obj(tag);
        comp.tgt = fp.obj(tag);
        comp.on_obj["*"] = phi.at(bx.first).obj(bx.second);
        comp.on_mor[comp.src.id_on("*")] = comp.tgt.id_on(comp.on_obj.at("*"));
        cone.component[tag] = std::move(comp);
    }
    for (const auto& [tag, data] : e.one_data) {
        auto [t1, t2] = e.total.cell1_home(tag);
        NaturalTransformation s;
        s.src = compose_functors(fp.cell1(tag), cone.at(t1));
        s.tgt = compose_functors(cone.at(t2), d1e.cell1(tag));
        s.component["*"] = phi.at(e.obj_data.at(t2).first).mor(data[1]);
        cone.structure[tag] = std::move(s);
    }
    return cone;
}

// The marked cone induced by a strict cylinder weighted by the slice weight:
// evaluate each component at the identity slice object.
Transformation slice_weight_cone(const Transformation& phi, const ElementsResult& e,
                                 const CatValued2Functor& z, const CatValued2Functor& d1e,
                                 const CatValued2Functor& f) {
    Transformation cone;
    cone.flavor = Flavor::MarkedLax;
    cone.marking = e.marking;
    cone.src = d1e;
    cone.tgt = f;
    for (const auto& [tag, bx] : e.obj_data) {
        Functor comp;
        comp.src = d1e.obj(tag);
        comp.tgt = f.obj(tag);
        comp.on_obj["*"] = phi.at(tag).obj(z.obj(bx.first).id_on(bx.second));
        comp.on_mor[comp.src.id_on("*")] = comp.tgt.id_on(comp.on_obj.at("*"));
        cone.component[tag] = std::move(comp);
    }
    for (const auto& [tag, data] : e.one_data) {
        auto [t1, t2] = e.total.cell1_home(tag);
        const auto& [b2, x2] = e.obj_data.at(t2);
        NaturalTransformation s;
        s.src = compose_functors(f.cell1(tag), cone.at(t1));
        s.tgt = compose_functors(cone.at(t2), d1e.cell1(tag));
        s.component["*"] =
            phi.at(t2).mor(pair_tag(data[1], z.obj(b2).id_on(x2)));
        cone.structure[tag] = std::move(s);
    }
    return cone;
}

// Evaluate a cylinder-to-cone assignment into a comparison functor and certify.
LimitResult compare_against_cones(
    WeightedLimitFull a, const HomCategoryResult& b, const ElementsResult& e,
    const std::function<Transformation(const Transformation&)>& to_cone,
    const std::function<Id(const Modification&, const Id&)>& mor_component) {
    Functor cmp;
    cmp.src = a.hc.cat;
    cmp.tgt = b.cat;
    std::map<Id, Transformation> cones;
    for (const auto& [key, phi] : a.hc.objects) {
        Transformation cone = to_cone(phi);
        Id ck = trans_key(cone);
        if (!b.cat.has_object(ck))
            throw ComparisonFailure("cone image is not a marked cone: " + key);
        cmp.on_obj[key] = ck;
        cones.emplace(key, std::move(cone));
    }
    for (const auto& [key, mod] : a.hc.morphisms) {
        Modification md;
        md.src = cones.at(trans_key(mod.src));
        md.tgt = cones.at(trans_key(mod.tgt));
        for (const auto& [tag, bx] : e.obj_data) {
            NaturalTransformation n;
            n.src = md.src.at(tag);
            n.tgt = md.tgt.at(tag);
            n.component["*"] = mor_component(mod, tag);
            md.component[tag] = std::move(n);
        }
        Id mk = modif_key(md);
        if (!b.cat.find_morphism(mk))
            throw ComparisonFailure("modification image is not a cone morphism: " + key);
        cmp.on_mor[key] = mk;
    }
    LimitResult res = std::move(a.res);
    res.comparison = cmp;
    ValidationReport iso = iso_of_categories(cmp);
    res.report.merge(iso);
    res.report.notes.push_back(
        "cylinders: " + std::to_string(res.limit.objects.size()) + " objects, " +
        std::to_string(res.limit.morphisms.size()) + " morphisms; cones: " +
        std::to_string(b.cat.objects.size()) + " objects, " +
        std::to_string(b.cat.morphisms.size()) + " morphisms");
    return res;
}

}  // namespace

LimitResult conicalization_check(const CatValued2Functor& w, const CatValued2Functor& f,
                                 const Limits& limits) {
    if (!(w.base == f.base)) throw ShapeMismatch("weight and diagram bases differ");
    ElementsResult e = elements_op(w, limits);
    CatValued2Functor d1e = constant_diagram(e.total, terminal_category());
    CatValued2Functor fp = precompose(f, e.projection);
    WeightedLimitFull a = weighted_limit_full(w, f, limits);
    HomCategoryResult b = hom_category_full(d1e, fp, Flavor::MarkedLax, e.marking, limits);
    return compare_against_cones(
        std::move(a), b, e,
        [&](const Transformation& phi) { return conical_cone(phi, e, d1e, fp); },
        [&](const Modification& mod, const Id& tag) {
            const auto& [b0, x] = e.obj_data.at(tag);
            return mod.at(b0).at(x);
        });
}

LimitResult weight_laxn_equivalence_check(const CatValued2Functor& z,
                                          const CatValued2Functor& f,
                                          const Limits& limits) {
    ElementsResult e = elements_op(z, limits);
    if (!(f.base == e.total))
        throw ShapeMismatch("diagram does not live over the elements of the weight data");
    CatValued2Functor w = weight_laxn(z, limits);
    CatValued2Functor d1e = constant_diagram(e.total, terminal_category());
    WeightedLimitFull a = weighted_limit_full(w, f, limits);
    HomCategoryResult b = hom_category_full(d1e, f, Flavor::MarkedLax, e.marking, limits);
    return compare_against_cones(
        std::move(a), b, e,
        [&](const Transformation& phi) { return slice_weight_cone(phi, e, z, d1e, f); },
        [&](const Modification& mod, const Id& tag) {
            const auto& [b0, x] = e.obj_data.at(tag);
            return mod.at(tag).at(z.obj(b0).id_on(x));
        });
}

FiniteCategory marked_oplax_cocylinder_category(const Marking& m, const CatValued2Functor& w,
                                                const CatValued2Functor& f,
                                                const FiniteCategory& u,
                                                const Limits& limits) {
    if (!(m.carrier == f.base)) throw ShapeMismatch("marking carrier is not the base");
    HomDiagram hd = hom_diagram_contra(f, u, limits);
    if (!(w.base == hd.diag.base))
        throw ShapeMismatch("weight must live over the 1-cell dual of the base");
    Marking m2{hd.diag.base, m.marked};
    return hom_category(w, hd.diag, Flavor::MarkedOplax, m2, limits);
}

std::vector<FiniteCategory> default_probes() {
    return {terminal_category(), walking_arrow(), walking_iso(), commutative_square()};
}

ValidationReport is_marked_oplax_colimit(const Marking& m, const CatValued2Functor& w,
                                         const CatValued2Functor& f,
                                         const FiniteCategory& candidate,
                                         const Transformation& mu,
                                         const std::vector<FiniteCategory>& probes,
                                         const Limits& limits) {
    ValidationReport r;
    if (!(m.carrier == f.base)) throw ShapeMismatch("marking carrier is not the base");
    HomDiagram hdc = hom_diagram_contra(f, candidate, limits);
    Marking m2{hdc.diag.base, m.marked};
    if (!(mu.src == w) || !(mu.tgt == hdc.diag) || mu.flavor != Flavor::MarkedOplax) {
        r.fail("cocylinder-shape", {});
        return r;
    }
    r.merge(check_transformation(mu));
    if (!r.pass) return r;

    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        const FiniteCategory& u = probes[pi];
        std::string pn = "probe-" + std::to_string(pi);
        FunctorCatData lhs = materialize(candidate, u, limits);
        HomDiagram hdu = hom_diagram_contra(f, u, limits);
        HomCategoryResult rhs =
            hom_category_full(w, hdu.diag, Flavor::MarkedOplax, m2, limits);
        r.notes.push_back(pn + ": candidate side " + std::to_string(lhs.cat.objects.size()) +
                          " objects / " + std::to_string(lhs.cat.morphisms.size()) +
                          " morphisms, cocylinder side " +
                          std::to_string(rhs.cat.objects.size()) + " objects / " +
                          std::to_string(rhs.cat.morphisms.size()) + " morphisms");

        // postcomposition with h at each base object, in materialized keys
        auto push = [&](const Functor& h, const Id& x) {
            Functor p;
            p.src = hdc.diag.obj(x);
            p.tgt = hdu.diag.obj(x);
            for (const auto& [k, g] : hdc.obj_of_key.at(x))
                p.on_obj[k] = functor_key(compose_functors(h, g));
            for (const auto& [k, n] : hdc.mor_of_key.at(x))
                p.on_mor[k] = nat_key(whisker_post(h, n));
            return p;
        };

        Functor cmp;
        cmp.src = lhs.cat;
        cmp.tgt = rhs.cat;
        std::map<Id, Transformation> images;
        bool shape_ok = true;
        for (const auto& [hk, h] : lhs.fs) {
            Transformation t;
            t.flavor = Flavor::MarkedOplax;
            t.marking = m2;
            t.src = w;
            t.tgt = hdu.diag;
            std::map<Id, Functor> pc;
            for (const Id& x : f.base.objects) pc.emplace(x, push(h, x));
            for (const Id& x : f.base.objects)
                t.component[x] = compose_functors(pc.at(x), mu.at(x));
            for (const auto& [key, hcb] : hdc.diag.base.hom)
                for (const Id& c : hcb.objects)
                    t.structure[c] = whisker_post(pc.at(key.second), mu.str(c));
            Id tk = trans_key(t);
            if (!rhs.cat.has_object(tk)) {
                r.fail(pn + "/image-object", {hk, tk});
                shape_ok = false;
                continue;
            }
            cmp.on_obj[hk] = tk;
            images.emplace(hk, std::move(t));
        }
        if (!shape_ok) continue;
        for (const auto& [nk, n] : lhs.ns) {
            Modification md;
            md.src = images.at(functor_key(n.src));
            md.tgt = images.at(functor_key(n.tgt));
            for (const Id& x : f.base.objects) {
                NaturalTransformation comp;
                comp.src = md.src.at(x);
                comp.tgt = md.tgt.at(x);
                for (const Id& w0 : w.obj(x).objects)
                    comp.component[w0] = nat_key(
                        whisker_pre(n, hdc.obj_of_key.at(x).at(mu.at(x).obj(w0))));
                md.component[x] = std::move(comp);
            }
            Id mk = modif_key(md);
            if (!rhs.cat.find_morphism(mk)) {
                r.fail(pn + "/image-morphism", {nk, mk});
                continue;
            }
            cmp.on_mor[nk] = mk;
        }
        if (!r.pass) continue;
        ValidationReport iso = iso_of_categories(cmp);
        for (Violation& v : iso.violations) v.law = pn + "/" + v.law;
        if (!iso.pass) r.pass = false;
        r.violations.insert(r.violations.end(), iso.violations.begin(),
                            iso.violations.end());
    }
    return r;
}

}  // namespace cat2::limits
