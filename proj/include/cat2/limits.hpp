#pragma once

#include "cat2/elements.hpp"

// Weighted limits of Cat-valued diagrams as cylinder categories, marked-lax
// conical limits, the slice/coslice weights that present them as ordinary
// weighted limits, the comparison functors certifying the equivalences, and
// a probe-relative certifier for marked-oplax colimits.

namespace cat2::limits {

using namespace cat2::elements;

struct ComparisonFailure : std::runtime_error {
    explicit ComparisonFailure(const std::string& what) : std::runtime_error(what) {}
};

// A limit presented as a finite category together with the tautological
// universal cylinder (valued in materialized functor categories) and, when a
// second presentation is being compared against, the comparison functor into
// it plus its certification.
struct LimitResult {
    FiniteCategory limit;
    Transformation universal;
    std::optional<Functor> comparison;
    ValidationReport report;
};

// a |-> [l, f(a)], covariant over f's base; cells act by postcomposition and
// whiskering. Decoding tables per base object let callers evaluate keys.
struct HomDiagram {
    CatValued2Functor diag;
    std::map<Id, std::map<Id, Functor>> obj_of_key;                // base obj -> key -> functor
    std::map<Id, std::map<Id, NaturalTransformation>> mor_of_key;  // base obj -> key -> nat
};
HomDiagram hom_diagram_cov(const FiniteCategory& l, const CatValued2Functor& f,
                           const Limits& limits = {});
// a |-> [f(a), u] over the 1-cell dual of f's base; cells act by
// precomposition and whiskering.
HomDiagram hom_diagram_contra(const CatValued2Functor& f, const FiniteCategory& u,
                              const Limits& limits = {});

// The category of strict cylinders w => f with its universal cylinder.
LimitResult weighted_limit(const CatValued2Functor& w, const CatValued2Functor& f,
                           const Limits& limits = {});

// The category of m-marked lax cones over f with its universal cone.
LimitResult marked_lax_conical_limit(const Marking& m, const CatValued2Functor& f,
                                     const Limits& limits = {});

// Slice-valued weight over the elements of z: (B, X') |-> Z(B)/X'.
CatValued2Functor weight_laxn(const CatValued2Functor& z, const Limits& limits = {});
// Coslice-valued dual, obtained by opposing the fibers throughout; satisfies
// fiber_opposite(weight_oplaxn(z)) == weight_laxn(fiber_opposite(z)).
CatValued2Functor weight_oplaxn(const CatValued2Functor& z, const Limits& limits = {});

// Weighted limit of f by w against the marked-lax conical limit of f∘P over
// the elements of w; the comparison sends a cylinder phi to the cone with
// component phi_A(X) at (A, X) and structure phi_B(alpha) on (f, alpha).
LimitResult conicalization_check(const CatValued2Functor& w, const CatValued2Functor& f,
                                 const Limits& limits = {});

// Weighted limit of f (living over the elements of z) by weight_laxn(z)
// against the marked-lax conical limit; the comparison evaluates each
// cylinder component at the identity slice object.
LimitResult weight_laxn_equivalence_check(const CatValued2Functor& z,
                                          const CatValued2Functor& f,
                                          const Limits& limits = {});

// The category of m-marked oplax cocylinders w => Hom(f(-), u).
FiniteCategory marked_oplax_cocylinder_category(const Marking& m, const CatValued2Functor& w,
                                                const CatValued2Functor& f,
                                                const FiniteCategory& u,
                                                const Limits& limits = {});

// {terminal, walking arrow, walking iso, commutative square}
std::vector<FiniteCategory> default_probes();

// Probe-relative certification that (candidate, mu) is the m-marked oplax
// colimit of f weighted by w: for each probe u the canonical functor
// [candidate, u] -> cocylinders is an isomorphism. mu must be a marked-oplax
// cocylinder valued in hom_diagram_contra(f, candidate). Counts on both
// sides are recorded per probe in the report notes.
ValidationReport is_marked_oplax_colimit(const Marking& m, const CatValued2Functor& w,
                                         const CatValued2Functor& f,
                                         const FiniteCategory& candidate,
                                         const Transformation& mu,
                                         const std::vector<FiniteCategory>& probes = default_probes(),
                                         const Limits& limits = {});

}  // namespace cat2::limits
