#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mumford/group_desc.hpp"

namespace mumford {

/// Q = Z/m_1 + ... + Z/m_k with elements stored as residue tuples. Elements
/// are also addressed by a mixed-radix index in [0, |Q|).
class FiniteAbelianGroup {
public:
    using Element = std::vector<std::uint64_t>;

    explicit FiniteAbelianGroup(std::vector<std::uint64_t> factors);

    const std::vector<std::uint64_t>& factors() const { return factors_; }
    std::uint64_t order() const { return order_; }

    bool contains(const Element& x) const;
    Element zero() const { return Element(factors_.size(), 0); }
    Element add(const Element& a, const Element& b) const;
    Element scale(const Element& a, std::uint64_t k) const;
    std::uint64_t element_order(const Element& a) const;

    std::uint64_t index(const Element& x) const;
    Element element(std::uint64_t index) const;

    /// Sorted indices of the subgroup generated by gens.
    std::vector<std::uint64_t> span(const std::vector<Element>& gens) const;

private:
    std::vector<std::uint64_t> factors_;
    std::uint64_t order_ = 1;
};

/// Abstract type of a subgroup given by its sorted element indices: cyclic,
/// Klein four, or elementary abelian; nullopt for anything else. The result
/// is not canonicalized for any characteristic.
std::optional<GroupDesc> identify_subgroup(const FiniteAbelianGroup& q,
                                           const std::vector<std::uint64_t>& members);

/// Generators of the subgroup matching the standard presentation of `type`,
/// chosen as the index-wise first valid choice; nullopt when the subgroup has
/// no subgroup of that type.
std::optional<std::vector<FiniteAbelianGroup::Element>> standard_generators(
    const FiniteAbelianGroup& q, const std::vector<std::uint64_t>& members, const GroupDesc& type);

}  // namespace mumford
