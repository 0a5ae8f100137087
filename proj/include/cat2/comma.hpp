#pragma once

#include "cat2/kan.hpp"

// Explicit lax and oplax comma 2-categories of two strict 2-functors with a
// common target, the Cat-target specialization against a point, the complete
// probe-relative universal property checker for the latter, the comparison
// with the 2-category of elements, and the opcartesian/cleavage functor
// checks with the hom-versus-slice equivalence certification.

namespace cat2::comma {

using namespace cat2::kan;

// Objects are triples (A, B, h: F A -> G B); a 1-cell is (a, b, phi) with
// phi: G(b) ∘ h => h' ∘ F(a); a 2-cell is a pair (alpha, beta) subject to
// the square pasting equation. Tags carry enough endpoints to stay globally
// unique; the decode maps avoid any string parsing.
struct CommaResult {
    Finite2Category total;
    TwoFunctor d0, d1;
    Gen2Transformation lam;  // the filling: component (A,B,h) |-> h, structure |-> phi

    std::map<Id, std::array<Id, 3>> obj_data;  // tag -> (A, B, h)
    std::map<Id, std::array<Id, 5>> one_data;  // tag -> (a, b, phi, h, h')
    std::map<Id, std::array<Id, 4>> two_data;  // tag -> (alpha, beta, src tag, tgt tag)
};

CommaResult lax_comma(const TwoFunctor& f, const TwoFunctor& g, const Limits& limits = {});
// The 2-cell dual construction: co-dualize, take the lax comma, co-dualize back.
CommaResult oplax_comma(const TwoFunctor& f, const TwoFunctor& g, const Limits& limits = {});

// The comma of the point against a Cat-valued diagram: h ranges over objects
// of f(B) and phi over morphisms. lam is the Cat-valued filling out of the
// constant terminal diagram.
struct CommaPointResult {
    Finite2Category total;
    TwoFunctor d0, d1;
    Transformation lam;

    std::map<Id, std::pair<Id, Id>> obj_data;   // tag -> (B, h)
    std::map<Id, std::array<Id, 3>> one_data;   // tag -> (g, phi, source fiber object)
    std::map<Id, std::array<Id, 3>> two_data;   // tag -> (delta, src tag, tgt tag)
};

CommaPointResult lax_comma_point(const CatValued2Functor& f, const Limits& limits = {});

// {terminal 2-category, locally discrete walking arrow, walking 2-cell}
std::vector<Finite2Category> default_probe_2cats();

// The three-level universal property against each probe M:
//   (i)  every lax cone (Q, gamma) factors through a unique strict V,
//   (ii) every (V, W, Delta, Xi) admits a unique lax nu with the projection
//        and interchange-pasting images prescribed, strictness restricting,
//   (iii) every (nu, omega, Psi) satisfying the pointwise filling equation
//        admits a unique modification Theta over it, and none otherwise.
// Failures are reported as violations rather than thrown, so every probe is
// inspected; counts land in the notes.
ValidationReport check_lax_comma_object(const CatValued2Functor& f, const CommaPointResult& c,
                                        const std::vector<Finite2Category>& probes =
                                            default_probe_2cats(),
                                        const Limits& limits = {});

// The 2-functor (B, X) |-> (*, B, X) from the elements to the point comma:
// isomorphism of 2-categories, commutes with the projections, carries the
// canonical transformation to the comma filling.
ValidationReport elements_lax_comma_iso(const CatValued2Functor& f, const Limits& limits = {});

// One-dimensional opcartesian lifting property of w against k.
bool opcartesian_1cell(const TwoFunctor& k, const Id& w);

// h must commute with the projections; then: opcartesian 1-cells are sent to
// opcartesian 1-cells.
ValidationReport cartesian_functor_check(const TwoFunctor& h, const SplitDiscrete2Opfib& p,
                                         const SplitDiscrete2Opfib& q);
// Chosen lifts are sent to chosen lifts.
ValidationReport cleavage_preserving_check(const TwoFunctor& h, const SplitDiscrete2Opfib& p,
                                           const SplitDiscrete2Opfib& q);

// Transformations f => g in the given flavor against the matching slice of
// 2-functors between the element 2-categories over the base: all 2-functors
// over the base for Lax, opcartesian-preserving for Pseudo, cleavage
// preserving for Strict. Morphisms on the slice side are strict 2-natural
// transformations whose projection whiskering is the identity. Certifies
// that the element construction is a bijection on both levels.
ValidationReport equivalence_check(const CatValued2Functor& f, const CatValued2Functor& g,
                                   Flavor flavor, const Limits& limits = {});

}  // namespace cat2::comma
