#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Finitely presented categories and 2-categories with total composition
// tables, plus the validation and enumeration machinery shared by every
// other module. All values are immutable after construction; operations
// are pure functions.

namespace cat2::kernel {

using Id = std::string;

// ---------------------------------------------------------------------------
// Errors and reports

struct SizeExceeded : std::runtime_error {
    explicit SizeExceeded(const std::string& what) : std::runtime_error(what) {}
};
struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct DanglingReference : std::runtime_error {
    explicit DanglingReference(const std::string& what) : std::runtime_error(what) {}
};

struct Violation {
    std::string law;
    std::vector<Id> witness;
    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    bool pass = true;
    std::vector<Violation> violations;
    std::vector<std::string> notes;  // informational only, never affects pass

    void fail(std::string law, std::vector<Id> witness) {
        pass = false;
        violations.push_back({std::move(law), std::move(witness)});
    }
    void merge(const ValidationReport& other) {
        pass = pass && other.pass;
        violations.insert(violations.end(), other.violations.begin(),
                          other.violations.end());
    }
    bool operator==(const ValidationReport&) const = default;
};

// Caps for exhaustive constructions. Overridable per call site.
struct Limits {
    std::size_t max_morphisms = 4096;
    std::size_t max_candidates = 1000000;
};

// ---------------------------------------------------------------------------
// FiniteCategory

struct Morphism {
    Id id, src, tgt;
    auto operator<=>(const Morphism&) const = default;
};

struct FiniteCategory {
    std::vector<Id> objects;                    // sorted
    std::vector<Morphism> morphisms;            // sorted by id
    std::map<Id, Id> identity;                  // object -> morphism
    std::map<std::pair<Id, Id>, Id> composition;  // (g, f) -> g∘f

    bool operator==(const FiniteCategory&) const = default;

    bool has_object(const Id& x) const {
        return std::binary_search(objects.begin(), objects.end(), x);
    }
    const Morphism* find_morphism(const Id& m) const {
        auto it = std::lower_bound(morphisms.begin(), morphisms.end(), m,
                                   [](const Morphism& a, const Id& b) { return a.id < b; });
        if (it == morphisms.end() || it->id != m) return nullptr;
        return &*it;
    }
    const Morphism& mor(const Id& m) const {
        const Morphism* p = find_morphism(m);
        if (!p) throw DanglingReference("unknown morphism: " + m);
        return *p;
    }
    Id src(const Id& m) const { return mor(m).src; }
    Id tgt(const Id& m) const { return mor(m).tgt; }
    Id id_on(const Id& x) const {
        auto it = identity.find(x);
        if (it == identity.end()) throw DanglingReference("no identity on: " + x);
        return it->second;
    }
    bool is_identity(const Id& m) const {
        const Morphism& r = mor(m);
        auto it = identity.find(r.src);
        return it != identity.end() && it->second == m;
    }
    // g∘f; throws when the pair is not in the table.
    Id compose(const Id& g, const Id& f) const {
        auto it = composition.find({g, f});
        if (it == composition.end())
            throw DanglingReference("composite undefined: (" + g + ", " + f + ")");
        return it->second;
    }
    std::vector<Id> hom(const Id& a, const Id& b) const {
        std::vector<Id> out;
        for (const Morphism& m : morphisms)
            if (m.src == a && m.tgt == b) out.push_back(m.id);
        return out;
    }
    bool is_iso(const Id& m) const {
        const Morphism& r = mor(m);
        for (const Morphism& n : morphisms) {
            if (n.src != r.tgt || n.tgt != r.src) continue;
            auto a = composition.find({n.id, m});
            auto b = composition.find({m, n.id});
            if (a != composition.end() && b != composition.end() &&
                a->second == id_on(r.src) && b->second == id_on(r.tgt))
                return true;
        }
        return false;
    }
    void add_object(const Id& x) { objects.push_back(x); }
    void add_morphism(Id id, Id src, Id tgt) {
        morphisms.push_back({std::move(id), std::move(src), std::move(tgt)});
    }
    // Sort fields into the canonical order. Call once after building.
    void normalize() {
        std::sort(objects.begin(), objects.end());
        objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
        std::sort(morphisms.begin(), morphisms.end(),
                  [](const Morphism& a, const Morphism& b) { return a.id < b.id; });
    }
};

// The canonical identity tag used by every generated presentation.
inline Id id_tag(const Id& object) { return "id:" + object; }

// Canonical pair tag for products and generated cells.
inline Id pair_tag(const Id& a, const Id& b) { return a + "|" + b; }

FiniteCategory terminal_category();              // One: single object "*"
FiniteCategory walking_arrow();                  // Two: a -> b
FiniteCategory walking_iso();                    // a ≅ b
FiniteCategory discrete_category(const std::vector<Id>& objects);
FiniteCategory composable_pair();                // a -> b -> c
FiniteCategory commutative_square();             // free square with relation
FiniteCategory parallel_pair();                  // a ⇉ b

ValidationReport validate(const FiniteCategory& c);

FiniteCategory opposite_category(const FiniteCategory& c);
FiniteCategory product_category(const FiniteCategory& c, const FiniteCategory& d,
                                const Limits& limits = {});
// Slice c/x: objects are morphisms into x tagged by their own id; a morphism
// alpha -> alpha' is gamma with alpha'∘gamma = alpha, tagged gamma|alpha'.
FiniteCategory slice_category(const FiniteCategory& c, const Id& x);
// Coslice x/c: objects are morphisms out of x; gamma with gamma∘alpha = alpha'.
FiniteCategory coslice_category(const FiniteCategory& c, const Id& x);

// ---------------------------------------------------------------------------
// Functors and natural transformations

struct Functor {
    FiniteCategory src, tgt;
    std::map<Id, Id> on_obj;
    std::map<Id, Id> on_mor;

    bool operator==(const Functor&) const = default;

    Id obj(const Id& x) const {
        auto it = on_obj.find(x);
        if (it == on_obj.end()) throw DanglingReference("functor undefined on object: " + x);
        return it->second;
    }
    Id mor(const Id& m) const {
        auto it = on_mor.find(m);
        if (it == on_mor.end()) throw DanglingReference("functor undefined on morphism: " + m);
        return it->second;
    }
};

struct NaturalTransformation {
    Functor src, tgt;                 // parallel functors
    std::map<Id, Id> component;       // object of src.src -> morphism of src.tgt

    bool operator==(const NaturalTransformation&) const = default;

    Id at(const Id& x) const {
        auto it = component.find(x);
        if (it == component.end()) throw DanglingReference("no component at: " + x);
        return it->second;
    }
};

ValidationReport validate(const Functor& f);
ValidationReport validate(const NaturalTransformation& t);

Functor identity_functor(const FiniteCategory& c);
Functor compose_functors(const Functor& g, const Functor& f);  // g∘f
bool functors_parallel(const Functor& f, const Functor& g);

NaturalTransformation identity_nat(const Functor& f);
// Vertical composite b∘a for a: F=>G, b: G=>H.
NaturalTransformation vcompose(const NaturalTransformation& b,
                               const NaturalTransformation& a);
// Whisker h∗t for t: F=>G: C->D and h: D->E, giving h∘F => h∘G.
NaturalTransformation whisker_post(const Functor& h, const NaturalTransformation& t);
// Whisker t∗h for h: E->C, giving F∘h => G∘h.
NaturalTransformation whisker_pre(const NaturalTransformation& t, const Functor& h);
bool nat_invertible(const NaturalTransformation& t);

// pass ⇔ on_obj and on_mor are bijections.
ValidationReport iso_of_categories(const Functor& f);

// Deterministic exhaustive enumerations, in the global lexicographic order.
std::vector<Functor> enumerate_functors(const FiniteCategory& c, const FiniteCategory& d,
                                        const Limits& limits = {});
std::vector<NaturalTransformation> enumerate_nat_trans(const Functor& f, const Functor& g,
                                                       const Limits& limits = {});

// The category of functors c -> u: objects tagged by canonical functor keys,
// morphisms by canonical natural-transformation keys.
FiniteCategory functor_category(const FiniteCategory& c, const FiniteCategory& u,
                                const Limits& limits = {});
Id functor_key(const Functor& f);
Id nat_key(const NaturalTransformation& t);

// ---------------------------------------------------------------------------
// Finite2Category

// 1-cells are the objects of the hom-categories, 2-cells their morphisms.
// Both kinds of identifiers must be globally unique across the 2-category.
struct Finite2Category {
    std::vector<Id> objects;                              // sorted
    std::map<std::pair<Id, Id>, FiniteCategory> hom;      // (a,b) -> hom(a,b)
    std::map<std::pair<Id, Id>, Id> hcomp1;               // (g,f) -> g∘f on 1-cells
    std::map<std::pair<Id, Id>, Id> hcomp2;               // (d,e) -> d∗e on 2-cells
    std::map<Id, Id> unit;                                // object -> unit 1-cell

    bool operator==(const Finite2Category&) const = default;

    const FiniteCategory& hom_at(const Id& a, const Id& b) const {
        auto it = hom.find({a, b});
        if (it == hom.end()) throw DanglingReference("no hom-category (" + a + ", " + b + ")");
        return it->second;
    }
    // Home (a,b) of a 1-cell.
    std::pair<Id, Id> cell1_home(const Id& f) const {
        for (const auto& [key, h] : hom)
            if (h.has_object(f)) return key;
        throw DanglingReference("unknown 1-cell: " + f);
    }
    std::pair<Id, Id> cell2_home(const Id& d) const {
        for (const auto& [key, h] : hom)
            if (h.find_morphism(d)) return key;
        throw DanglingReference("unknown 2-cell: " + d);
    }
    Id src1(const Id& f) const { return cell1_home(f).first; }
    Id tgt1(const Id& f) const { return cell1_home(f).second; }
    Id vsrc(const Id& d) const {
        auto [a, b] = cell2_home(d);
        return hom_at(a, b).src(d);
    }
    Id vtgt(const Id& d) const {
        auto [a, b] = cell2_home(d);
        return hom_at(a, b).tgt(d);
    }
    Id unit_on(const Id& x) const {
        auto it = unit.find(x);
        if (it == unit.end()) throw DanglingReference("no unit 1-cell on: " + x);
        return it->second;
    }
    Id hcomp_1(const Id& g, const Id& f) const {
        auto it = hcomp1.find({g, f});
        if (it == hcomp1.end())
            throw DanglingReference("horizontal composite undefined: (" + g + ", " + f + ")");
        return it->second;
    }
    Id hcomp_2(const Id& d, const Id& e) const {
        auto it = hcomp2.find({d, e});
        if (it == hcomp2.end())
            throw DanglingReference("horizontal 2-composite undefined: (" + d + ", " + e + ")");
        return it->second;
    }
    Id id2(const Id& f) const {
        auto [a, b] = cell1_home(f);
        return hom_at(a, b).id_on(f);
    }
    Id vcomp(const Id& d2, const Id& d1) const {
        auto [a, b] = cell2_home(d1);
        return hom_at(a, b).compose(d2, d1);
    }
    // Whisker a 2-cell e: f => f' with the 1-cell g on the left: g∗e.
    Id whisker_l(const Id& g, const Id& e) const { return hcomp_2(id2(g), e); }
    // Whisker d: g => g' with f on the right: d∗f.
    Id whisker_r(const Id& d, const Id& f) const { return hcomp_2(d, id2(f)); }

    std::vector<Id> all_1cells() const {
        std::vector<Id> out;
        for (const auto& [key, h] : hom)
            out.insert(out.end(), h.objects.begin(), h.objects.end());
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<Id> all_2cells() const {
        std::vector<Id> out;
        for (const auto& [key, h] : hom)
            for (const Morphism& m : h.morphisms) out.push_back(m.id);
        std::sort(out.begin(), out.end());
        return out;
    }
    // 1-cells a -> b.
    std::vector<Id> cells1(const Id& a, const Id& b) const { return hom_at(a, b).objects; }

    void normalize() {
        std::sort(objects.begin(), objects.end());
        objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
        for (auto& [key, h] : hom) h.normalize();
    }
};

enum class DualMode { Op, Co, Coop };

ValidationReport validate(const Finite2Category& k);
Finite2Category dualize(const Finite2Category& k, DualMode mode);
Finite2Category locally_discrete(const FiniteCategory& c);
Finite2Category terminal_2category();
Finite2Category walking_2cell();  // objects a,b; 1-cells f,g: a->b; one 2-cell f => g
// The ordinary category underlying a 2-category (1-cells, hcomp1).
FiniteCategory underlying_category(const Finite2Category& k);

// ---------------------------------------------------------------------------
// TwoFunctor

struct TwoFunctor {
    Finite2Category src, tgt;
    std::map<Id, Id> on_obj;
    std::map<Id, Id> on1;
    std::map<Id, Id> on2;

    bool operator==(const TwoFunctor&) const = default;

    Id obj(const Id& x) const {
        auto it = on_obj.find(x);
        if (it == on_obj.end()) throw DanglingReference("2-functor undefined on object: " + x);
        return it->second;
    }
    Id cell1(const Id& f) const {
        auto it = on1.find(f);
        if (it == on1.end()) throw DanglingReference("2-functor undefined on 1-cell: " + f);
        return it->second;
    }
    Id cell2(const Id& d) const {
        auto it = on2.find(d);
        if (it == on2.end()) throw DanglingReference("2-functor undefined on 2-cell: " + d);
        return it->second;
    }
    // The local functor hom(a,b) -> hom(F a, F b), materialized on demand.
    Functor local(const Id& a, const Id& b) const;
};

ValidationReport validate(const TwoFunctor& k);
TwoFunctor identity_two_functor(const Finite2Category& k);
TwoFunctor compose_two_functors(const TwoFunctor& g, const TwoFunctor& f);
// The functor between underlying categories.
Functor underlying_functor(const TwoFunctor& k);
// op-dual of a 2-functor: same tables, dualized endpoints.
TwoFunctor dualize(const TwoFunctor& k, DualMode mode);

std::vector<TwoFunctor> enumerate_two_functors(const Finite2Category& k,
                                               const Finite2Category& l,
                                               const Limits& limits = {});

// ---------------------------------------------------------------------------
// Overloaded entry point mirroring the module contract.

ValidationReport validate_entity(const FiniteCategory& e);
ValidationReport validate_entity(const Functor& e);
ValidationReport validate_entity(const NaturalTransformation& e);
ValidationReport validate_entity(const Finite2Category& e);
ValidationReport validate_entity(const TwoFunctor& e);

}  // namespace cat2::kernel
