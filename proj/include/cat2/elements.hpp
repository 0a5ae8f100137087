#pragma once

#include <array>

#include "cat2/diagrams.hpp"

// The 2-category of elements of a Cat-valued 2-functor, its functoriality,
// the canonical cartesian-marked lax transformation over it, discrete
// 2-opfibration certification, and reconstruction of the fiber diagram.
//
// Identifier scheme: an object (B, X) is tagged "B|X". A 1-cell (f, α) is
// tagged "f|α|X" where X is the fiber endpoint not recoverable from α (the
// source object in the op variant, the target object in the covariant one);
// without it two 1-cells over a non-injective reindexing functor would
// collide. A 2-cell is tagged "δ|f|α|g|β|X". The projection is still a
// literal first-component read.

namespace cat2::elements {

using namespace cat2::diagrams;

struct NotSplit : std::runtime_error {
    explicit NotSplit(const std::string& what) : std::runtime_error(what) {}
};

struct SplitDiscrete2Opfib {
    TwoFunctor k;                                   // total -> base
    std::map<std::pair<Id, Id>, Id> cleavage;       // (object, base 1-cell) -> lift

    bool operator==(const SplitDiscrete2Opfib&) const = default;

    Id lift(const Id& e, const Id& u) const {
        auto it = cleavage.find({e, u});
        if (it == cleavage.end())
            throw DanglingReference("no cleavage entry for (" + e + ", " + u + ")");
        return it->second;
    }
};

struct ElementsResult {
    Finite2Category total;
    TwoFunctor projection;      // total -> base (op variant) or total -> base^op (cov)
    Marking marking;            // the chosen-opcartesian 1-cells
    SplitDiscrete2Opfib opfib;  // certificate carrier; for the covariant
                                // variant this holds the op-dualized projection

    // decompositions of the generated tags, so callers never parse strings
    std::map<Id, std::pair<Id, Id>> obj_data;   // tag -> (B, X)
    std::map<Id, std::array<Id, 3>> one_data;   // tag -> (f, alpha, fiber endpoint)
    std::map<Id, std::array<Id, 3>> two_data;   // tag -> (delta, src 1-cell, tgt 1-cell)
};

// Tag helpers shared with the comma and kan modules.
Id elements_object_tag(const Id& b, const Id& x);
Id elements_1cell_tag(const Id& f, const Id& alpha, const Id& x);
Id elements_2cell_tag(const Id& delta, const Id& src1, const Id& tgt1);
// First component of a composite tag.
Id tag_head(const Id& tag);

// Contravariant-morphisms variant: 1-cells (f, α: F(f)(X) -> X').
ElementsResult elements_op(const CatValued2Functor& f, const Limits& limits = {});
// Covariant variant for presheaf-like diagrams: 1-cells (B,X) -> (B',X') are
// (f: B' -> B in the diagram's base, α: X -> W(f)(X')).
ElementsResult elements_cov(const CatValued2Functor& w, const Limits& limits = {});

// Fibers opposed, over the co-dualized base; the covariant variant equals the
// op-dual of elements_op of this (and co/coop variants compose from it).
CatValued2Functor fiber_opposite(const CatValued2Functor& f);

// The 2-functor ∫φ between element 2-categories of a lax φ: f => g.
TwoFunctor elements_map(const Transformation& phi, const ElementsResult& ef,
                        const ElementsResult& eg);
TwoFunctor elements_map(const Transformation& phi);
// The strict 2-natural transformation ∫Θ between elements_map(Θ.src) and
// elements_map(Θ.tgt); its projection-whiskering is the identity.
Gen2Transformation elements_2map(const Modification& theta, const ElementsResult& ef,
                                 const ElementsResult& eg);
Gen2Transformation elements_2map(const Modification& theta);

// The cartesian-marked lax transformation Δ1 => f∘P over ∫f.
Transformation canonical_lambda(const CatValued2Functor& f, const ElementsResult& e);

ValidationReport is_opfibration(const Functor& u);
ValidationReport is_discrete_fibration(const Functor& u);
ValidationReport is_discrete_2opfibration(const TwoFunctor& k);

// Deterministic-minimal cleavage; throws NotSplit when the least opcartesian
// lifts are not closed under composition.
SplitDiscrete2Opfib extract_cleavage(const TwoFunctor& k);

struct ReconstructionResult {
    CatValued2Functor fiber;  // the fiber 2-copresheaf over k.tgt
    TwoFunctor iso;           // elements_op(fiber).total -> k.src, over the base
};

ReconstructionResult reconstruct(const SplitDiscrete2Opfib& p, const Limits& limits = {});

// validate + bijectivity on objects, 1-cells and 2-cells.
ValidationReport iso_of_2categories(const TwoFunctor& k);

// Full roundtrip: elements_op, certify, reconstruct, then compare the fiber
// diagram with f literally after stripping the "B|" object prefixes, and
// check the rebuilt total is isomorphic to the original over the base.
ValidationReport reconstruction_roundtrip(const CatValued2Functor& f,
                                          const Limits& limits = {});

}  // namespace cat2::elements
