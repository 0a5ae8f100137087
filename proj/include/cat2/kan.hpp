#pragma once

#include "cat2/limits.hpp"

// Two-variable transformations (marked-oplax in the first variable, lax in
// the second), extraordinary lax transformations over the total 2-category of
// a split discrete 2-opfibration, the bijection between the two (with its
// modification level), and pointwise/weak left Kan extension certification.

namespace cat2::kan {

using namespace cat2::limits;

// ---------------------------------------------------------------------------
// Two-variable Cat-valued data

// A strict 2-functor B^op x C -> Cat, kept in curried form: separate actions
// of cells of B (contravariant) and of C (covariant) with strict interchange.
struct TwoVarCatFunctor {
    Finite2Category base_b, base_c;
    std::map<std::pair<Id, Id>, FiniteCategory> on_obj;           // (B obj, C obj)
    std::map<std::pair<Id, Id>, Functor> on1_b;                   // (B 1-cell, C obj)
    std::map<std::pair<Id, Id>, Functor> on1_c;                   // (B obj, C 1-cell)
    std::map<std::pair<Id, Id>, NaturalTransformation> on2_b;     // (B 2-cell, C obj)
    std::map<std::pair<Id, Id>, NaturalTransformation> on2_c;     // (B obj, C 2-cell)

    bool operator==(const TwoVarCatFunctor&) const = default;

    const FiniteCategory& obj(const Id& e, const Id& a) const;
    const Functor& b1(const Id& c, const Id& a) const;   // F(c, a): F(e', a) -> F(e, a)
    const Functor& c1(const Id& e, const Id& u) const;   // F(e, u): F(e, a) -> F(e, a')
    const NaturalTransformation& b2(const Id& d, const Id& a) const;
    const NaturalTransformation& c2(const Id& e, const Id& t) const;
};

ValidationReport validate(const TwoVarCatFunctor& f);

// Fix the second argument: a diagram over the 1-cell dual of B.
CatValued2Functor slice_b(const TwoVarCatFunctor& f, const Id& a);
// Fix the first argument: a diagram over C.
CatValued2Functor slice_c(const TwoVarCatFunctor& f, const Id& e);

// (e, a) |-> Hom_C(k(e), a) for a strict 2-functor k: B -> C.
TwoVarCatFunctor hom_two_var(const TwoFunctor& k);
// (e, a) |-> g(a), ignoring the first variable.
TwoVarCatFunctor two_var_from_diagram(const Finite2Category& b, const CatValued2Functor& g);

// ---------------------------------------------------------------------------
// Two-variable transformations and their modifications

// alpha: F => G with alpha_{-,a} marked-oplax for every a and alpha_{e,-}
// lax for every e, plus the compatibility pasting on every (c, u) square.
struct TwoVarTransformation {
    Marking marking;  // on base_b
    TwoVarCatFunctor src, tgt;
    std::map<std::pair<Id, Id>, Functor> component;                  // (B obj, C obj)
    std::map<std::pair<Id, Id>, NaturalTransformation> structure_b;  // (B 1-cell, C obj)
    std::map<std::pair<Id, Id>, NaturalTransformation> structure_c;  // (B obj, C 1-cell)

    bool operator==(const TwoVarTransformation&) const = default;

    const Functor& at(const Id& e, const Id& a) const;
    const NaturalTransformation& str_b(const Id& c, const Id& a) const;
    const NaturalTransformation& str_c(const Id& e, const Id& u) const;
};

struct TwoVarModification {
    TwoVarTransformation src, tgt;
    std::map<std::pair<Id, Id>, NaturalTransformation> component;

    bool operator==(const TwoVarModification&) const = default;
    const NaturalTransformation& at(const Id& e, const Id& a) const;
};

ValidationReport check_two_var(const TwoVarTransformation& t);
ValidationReport check_two_var(const TwoVarModification& m);
TwoVarTransformation identity_two_var(const TwoVarCatFunctor& f, const Marking& marking);

// ---------------------------------------------------------------------------
// Extraordinary lax transformations

// eta over the total 2-category of p, valued in f (on B^op x A with A the
// codomain of p.k): an object eta_e of f(e, K(e)) for every e, and for every
// 1-cell c: e -> e' a morphism f(e, K(c))(eta_e) -> f(c, K(e'))(eta_{e'}),
// unital, compositional, and compatible with 2-cells.
struct ExtraordinaryLaxTransformation {
    SplitDiscrete2Opfib p;
    TwoVarCatFunctor f;
    std::map<Id, Id> component;  // B object -> object of f(e, K(e))
    std::map<Id, Id> structure;  // B 1-cell -> morphism of f(e, K(e'))

    bool operator==(const ExtraordinaryLaxTransformation&) const = default;
};

struct ExtraordinaryModification {
    ExtraordinaryLaxTransformation src, tgt;
    std::map<Id, Id> component;  // B object -> morphism of f(e, K(e))

    bool operator==(const ExtraordinaryModification&) const = default;
};

ValidationReport check_extraordinary(const ExtraordinaryLaxTransformation& t);
ValidationReport check_extraordinary(const ExtraordinaryModification& m);

std::vector<ExtraordinaryLaxTransformation> enumerate_extraordinary(
    const SplitDiscrete2Opfib& p, const TwoVarCatFunctor& f, const Limits& limits = {});

// Marking whose marked 1-cells are the units and the chosen cleavage lifts.
Marking cleavage_marking(const SplitDiscrete2Opfib& p);

// ---------------------------------------------------------------------------
// The parametrized bijection: restriction along the unit on one side,
// expansion through the cleavage on the other. Mutually inverse, and
// functorial at the modification level.

ExtraordinaryLaxTransformation yoneda_to_extraordinary(const TwoVarTransformation& alpha,
                                                       const SplitDiscrete2Opfib& p);
TwoVarTransformation yoneda_from_extraordinary(const ExtraordinaryLaxTransformation& eta);
ExtraordinaryModification yoneda_to_extraordinary(const TwoVarModification& theta,
                                                  const SplitDiscrete2Opfib& p);
TwoVarModification yoneda_from_extraordinary(const ExtraordinaryModification& gamma);

// ---------------------------------------------------------------------------
// Kan extension certification

struct KanReport {
    bool pass = true;
    std::map<Id, ValidationReport> per_object;
    std::vector<std::string> per_probe;
};

// The weight Hom_A(k(-), a) over the 1-cell dual of k's source.
CatValued2Functor kan_weight(const TwoFunctor& k, const Id& a);

// For every object a of the target base: the cocylinder u |-> l(u) ∘ lam_e
// out of kan_weight(k, a), certified as the marked-oplax colimit of f with
// candidate l(a). lam: f => l∘k must be marked-lax; its marking is used.
KanReport pointwise_kan_check(const SplitDiscrete2Opfib& p, const CatValued2Functor& f,
                              const CatValued2Functor& l, const Transformation& lam,
                              const std::vector<FiniteCategory>& probes =
                                  limits::default_probes(),
                              const Limits& limits = {});

// For each probe diagram u over the target base: pasting with lam must be an
// isomorphism from lax cylinders l => u onto lax cylinders f => u∘k. When
// lam carries a marking, the pseudo/sigma and strict/marked-lax restrictions
// are certified as well.
KanReport weak_kan_check(const TwoFunctor& k, const CatValued2Functor& f,
                         const CatValued2Functor& l, const Transformation& lam,
                         const std::vector<CatValued2Functor>& probes_u,
                         const Limits& limits = {});

// {constant terminal, constant walking arrow, l itself, one representable}
std::vector<CatValued2Functor> default_u_probes(const CatValued2Functor& l);

// Certifies f as the pointwise left Kan extension of the constant terminal
// diagram along the projection from its own elements, and exercises the
// explicit solved-form uniqueness: every cocylinder into a probe category
// factors through the canonical one by a unique functor.
KanReport lan_delta1_check(const CatValued2Functor& f,
                           const std::vector<FiniteCategory>& probes =
                               limits::default_probes(),
                           const Limits& limits = {});

}  // namespace cat2::kan
