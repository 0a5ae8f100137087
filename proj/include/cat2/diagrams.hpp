#pragma once

#include "cat2/kernel.hpp"

// Cat-valued 2-functors over a finite 2-category base, transformations
// between them in six flavors (plus an internal seventh used by the Kan
// module), modifications, enumeration, hom-categories, pasting, and the
// lax interchange modification.
//
// Orientation convention, fixed once: for a lax transformation t: F => G
// and a 1-cell f: a -> b of the base, the structure cell is
//   t_f : G(f) ∘ t_a  =>  t_b ∘ F(f)
// as a natural transformation between functors F(a) -> G(b). Oplax is the
// exact reverse. Marked flavors force identity structure on marked 1-cells;
// the Sigma flavor (internal) forces invertible structure there.

namespace cat2::diagrams {

using namespace cat2::kernel;

struct FlavorMismatch : std::runtime_error {
    explicit FlavorMismatch(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Diagrams and markings

struct CatValued2Functor {
    Finite2Category base;
    std::map<Id, FiniteCategory> on_obj;
    std::map<Id, Functor> on1;
    std::map<Id, NaturalTransformation> on2;

    bool operator==(const CatValued2Functor&) const = default;

    const FiniteCategory& obj(const Id& a) const {
        auto it = on_obj.find(a);
        if (it == on_obj.end()) throw DanglingReference("diagram undefined on object: " + a);
        return it->second;
    }
    const Functor& cell1(const Id& f) const {
        auto it = on1.find(f);
        if (it == on1.end()) throw DanglingReference("diagram undefined on 1-cell: " + f);
        return it->second;
    }
    const NaturalTransformation& cell2(const Id& d) const {
        auto it = on2.find(d);
        if (it == on2.end()) throw DanglingReference("diagram undefined on 2-cell: " + d);
        return it->second;
    }
};

struct Marking {
    Finite2Category carrier;
    std::set<Id> marked;

    bool operator==(const Marking&) const = default;
    bool is_marked(const Id& f) const { return marked.count(f) > 0; }
};

// marked = all 1-cells
Marking trivial_marking(const Finite2Category& carrier);
// marked = units only
Marking chaotic_marking(const Finite2Category& carrier);

ValidationReport validate(const CatValued2Functor& f);
// Structural check only: units marked and closure under horizontal
// composition. Certification against a fibration is the elements module's.
ValidationReport validate(const Marking& m);

CatValued2Functor constant_diagram(const Finite2Category& base, const FiniteCategory& d);
// a |-> hom(b, a), covariant.
CatValued2Functor representable(const Finite2Category& base, const Id& b);
// a |-> hom(a, b) as a 2-functor on base^op.
CatValued2Functor representable_op(const Finite2Category& base, const Id& b);
// f ∘ k for k a strict 2-functor into f's base.
CatValued2Functor precompose(const CatValued2Functor& f, const TwoFunctor& k);

// ---------------------------------------------------------------------------
// Transformations and modifications

enum class Flavor { Strict, Pseudo, Lax, Oplax, MarkedLax, MarkedOplax, Sigma };

inline bool flavor_is_oplax(Flavor f) {
    return f == Flavor::Oplax || f == Flavor::MarkedOplax;
}
inline bool flavor_uses_marking(Flavor f) {
    return f == Flavor::MarkedLax || f == Flavor::MarkedOplax || f == Flavor::Sigma;
}
std::string flavor_name(Flavor f);

struct Transformation {
    Flavor flavor = Flavor::Lax;
    std::optional<Marking> marking;
    CatValued2Functor src, tgt;
    std::map<Id, Functor> component;            // base object -> functor
    std::map<Id, NaturalTransformation> structure;  // base 1-cell -> nat

    bool operator==(const Transformation&) const = default;

    const Functor& at(const Id& a) const {
        auto it = component.find(a);
        if (it == component.end()) throw DanglingReference("no component at: " + a);
        return it->second;
    }
    const NaturalTransformation& str(const Id& f) const {
        auto it = structure.find(f);
        if (it == structure.end()) throw DanglingReference("no structure at: " + f);
        return it->second;
    }
};

struct Modification {
    Transformation src, tgt;
    std::map<Id, NaturalTransformation> component;  // base object -> nat

    bool operator==(const Modification&) const = default;

    const NaturalTransformation& at(const Id& a) const {
        auto it = component.find(a);
        if (it == component.end()) throw DanglingReference("no component at: " + a);
        return it->second;
    }
};

ValidationReport check_transformation(const Transformation& t);
ValidationReport check_modification(const Modification& m);

Transformation identity_transformation(const CatValued2Functor& f, Flavor flavor,
                                       std::optional<Marking> marking = std::nullopt);
Modification identity_modification(const Transformation& t);

// Vertical composite b ∘ a. Both lax-family or both oplax-family.
Transformation vcompose(const Transformation& b, const Transformation& a);
Modification vcompose(const Modification& b, const Modification& a);

enum class Side { Pre, Post };
// side Pre with a 2-functor reindexes the base; with a transformation it is
// vertical composition on that side.
Transformation paste(const Transformation& t, const TwoFunctor& at, Side side);
Transformation paste(const Transformation& t, const Transformation& at, Side side);

std::vector<Transformation> enumerate_transformations(
    const CatValued2Functor& f, const CatValued2Functor& g, Flavor flavor,
    std::optional<Marking> marking = std::nullopt, const Limits& limits = {});
std::vector<Modification> enumerate_modifications(const Transformation& s,
                                                  const Transformation& t,
                                                  const Limits& limits = {});

// Canonical serialization keys; flavor-independent so stricter hom-categories
// embed literally into laxer ones.
Id trans_key(const Transformation& t);
Id modif_key(const Modification& m);

FiniteCategory hom_category(const CatValued2Functor& f, const CatValued2Functor& g,
                            Flavor flavor, std::optional<Marking> marking = std::nullopt,
                            const Limits& limits = {});

// Same category plus the data behind each generated identifier, for callers
// that need to evaluate the cylinders (limits, kan).
struct HomCategoryResult {
    FiniteCategory cat;
    std::map<Id, Transformation> objects;
    std::map<Id, Modification> morphisms;
};
HomCategoryResult hom_category_full(const CatValued2Functor& f, const CatValued2Functor& g,
                                    Flavor flavor,
                                    std::optional<Marking> marking = std::nullopt,
                                    const Limits& limits = {});

// ---------------------------------------------------------------------------
// Transformations valued in a general finite 2-category (used by the comma
// module and by the interchange modification; Cat-valued code above stays
// the common case).

struct Gen2Transformation {
    Flavor flavor = Flavor::Lax;
    std::optional<Marking> marking;
    TwoFunctor src, tgt;             // parallel strict 2-functors M -> K
    std::map<Id, Id> component;      // object of M -> 1-cell of K
    std::map<Id, Id> structure;      // 1-cell of M -> 2-cell of K

    bool operator==(const Gen2Transformation&) const = default;

    Id at(const Id& a) const {
        auto it = component.find(a);
        if (it == component.end()) throw DanglingReference("no component at: " + a);
        return it->second;
    }
    Id str(const Id& f) const {
        auto it = structure.find(f);
        if (it == structure.end()) throw DanglingReference("no structure at: " + f);
        return it->second;
    }
};

struct Gen2Modification {
    Gen2Transformation src, tgt;
    std::map<Id, Id> component;      // object of M -> 2-cell of K

    bool operator==(const Gen2Modification&) const = default;

    Id at(const Id& a) const {
        auto it = component.find(a);
        if (it == component.end()) throw DanglingReference("no component at: " + a);
        return it->second;
    }
};

ValidationReport check_transformation(const Gen2Transformation& t);
ValidationReport check_modification(const Gen2Modification& m);
Gen2Transformation identity_gen2(const TwoFunctor& f, Flavor flavor);
std::vector<Gen2Transformation> enumerate_gen2_transformations(
    const TwoFunctor& f, const TwoFunctor& g, Flavor flavor,
    std::optional<Marking> marking = std::nullopt, const Limits& limits = {});

// Apply a Cat-valued diagram F on K to a lax nu: V => W: M -> K, giving the
// lax transformation F∘V => F∘W over M.
Transformation apply(const CatValued2Functor& f, const Gen2Transformation& nu);

// The lax interchange: for nu: V => W: M -> K lax and lam: H => K2 lax over
// K (Cat-valued), the modification
//   (K2·nu) ∘ (lam·V)  ⇛  (lam·W) ∘ (H·nu)
// whose component at A is lam's structure cell on nu_A.
Modification interchange_modification(const Gen2Transformation& nu,
                                      const Transformation& lam);

}  // namespace cat2::diagrams
