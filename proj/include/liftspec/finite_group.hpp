#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "liftspec/permutation.hpp"

namespace liftspec {

/// Sorted list of element indices.
using ElementSet = std::vector<std::size_t>;

inline constexpr std::size_t kDefaultOrderCap = 10080;

/// A finite permutation group with its elements in canonical order:
/// lexicographic by image tuple, so the identity is element 0.
///
/// The multiplication table is stored densely up to kDenseTableLimit
/// elements; larger groups multiply through the image lookup.
class FiniteGroup {
public:
    static constexpr std::size_t kDenseTableLimit = 2048;

    /// Closure of `generators`. Throws ConsistencyError if the generators
    /// disagree on degree or the closure exceeds `order_cap`. An empty list
    /// yields the trivial group on `degree` points.
    static FiniteGroup generate(std::span<const Permutation> generators, std::size_t degree,
                                std::size_t order_cap = kDefaultOrderCap);

    std::size_t order() const { return elements_.size(); }
    std::size_t degree() const { return degree_; }
    static constexpr std::size_t identity() { return 0; }

    const Permutation& element(std::size_t i) const { return elements_[i]; }
    const std::vector<Permutation>& elements() const { return elements_; }

    /// Generator element indices, in the order they were supplied (duplicates
    /// and identities dropped).
    const std::vector<std::size_t>& generators() const { return generators_; }

    std::optional<std::size_t> index_of(const Permutation& p) const;

    std::size_t multiply(std::size_t a, std::size_t b) const;
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }

    /// Smallest subgroup containing the given elements.
    ElementSet subgroup_generated_by(std::span<const std::size_t> elements) const;

    /// True iff `subset` is non-empty and closed under multiplication.
    bool is_subgroup(std::span<const std::size_t> subset) const;

    /// Orbit of point 1 covers every point.
    bool is_transitive() const;
    /// Transitive and |G| equals the degree.
    bool is_regular_action() const;

private:
    FiniteGroup() = default;

    std::size_t degree_ = 1;
    std::vector<Permutation> elements_;
    std::vector<std::size_t> generators_;
    std::vector<std::size_t> inverse_;
    std::vector<std::uint32_t> table_;
    std::map<std::vector<int>, std::size_t> lookup_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct ConjugacyClass {
    std::size_t representative = 0;  // canonically smallest member
    ElementSet members;
    std::size_t size() const { return members.size(); }
};

/// Classes ordered by representative. Throws NumericalError if a class
/// fails the orbit-stabilizer count, which would mean a corrupt table.
std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& group);

/// Elements fixing the 1-based `point`.
ElementSet stabilizer(const FiniteGroup& group, std::size_t point);

/// A subgroup H together with its right cosets Hg.
struct SubgroupContext {
    GroupPtr group;
    ElementSet subgroup;
    std::vector<ElementSet> cosets;          // cosets[0] == subgroup
    std::vector<std::size_t> representatives;  // cosets[J] == H * representatives[J]
    std::vector<std::size_t> coset_of;       // element index -> coset index

    std::size_t index() const { return cosets.size(); }

    /// Coset J*g.
    std::size_t act(std::size_t coset, std::size_t g) const {
        return coset_of[group->multiply(representatives[coset], g)];
    }
};

/// Right cosets of `subgroup`, enumerated breadth first from H by right
/// multiplication with the group generators in order. Throws
/// ConsistencyError if `subgroup` is not a subgroup.
SubgroupContext right_cosets(GroupPtr group, ElementSet subgroup);

/// gHg^-1 == H for every g.
bool is_normal(const SubgroupContext& ctx);

}  // namespace liftspec
