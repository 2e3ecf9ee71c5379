#pragma once

// Finite abelian groups that occur as stabilizers inside PGL2 of a finite
// field of characteristic p: cyclic of order prime to p, the Klein four group
// (p != 2) and elementary abelian p-groups E(r).

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace mumford {

enum class GroupKind { Trivial, Cyclic, Klein4, ElemAb };

struct GroupDesc {
    GroupKind kind = GroupKind::Trivial;
    std::uint64_t n = 1;  // Cyclic only
    std::uint64_t p = 0;  // ElemAb only
    unsigned r = 0;       // ElemAb only

    static GroupDesc trivial() { return {}; }
    static GroupDesc cyclic(std::uint64_t n);
    static GroupDesc klein4() { return {GroupKind::Klein4, 1, 0, 0}; }
    static GroupDesc elem_ab(std::uint64_t p, unsigned r);

    /// Short label: "1", "Z6", "D2", "E(3,2)".
    std::string label() const;

    auto operator<=>(const GroupDesc&) const = default;
};

std::uint64_t order(const GroupDesc& g);

/// Number of generators in the standard presentation (0, 1, 2 or r).
unsigned generator_count(const GroupDesc& g);
/// Order of each standard generator: n, 2 or p.
std::uint64_t generator_order(const GroupDesc& g);

enum class FamilyKind { CyclicPrimeToP, KleinFour, ElementaryAbelian };

/// One of the admissible abelian families in characteristic p.
struct AbelianFamily {
    FamilyKind kind;
    std::uint64_t p;

    bool contains(const GroupDesc& g) const;
    /// Members of order <= max_order, in increasing order.
    std::vector<GroupDesc> members(std::uint64_t max_order) const;
    std::string description() const;
};

std::vector<AbelianFamily> classify_abelian_families(std::uint64_t p);

/// Nontrivial admissible groups of order <= max_order, canonical for p,
/// sorted by (order, kind).
std::vector<GroupDesc> admissible_groups(std::uint64_t p, std::uint64_t max_order);

struct RamificationProfile {
    std::vector<std::uint64_t> indices;
    auto operator<=>(const RamificationProfile&) const = default;
};

RamificationProfile ramification_profile(const GroupDesc& g);

/// True iff h embeds in g.
bool admissible_subgroup(const GroupDesc& h, const GroupDesc& g);

/// All subgroup isomorphism types of g (canonical descriptors, Trivial and g
/// included), sorted by order.
std::vector<GroupDesc> subgroup_types(const GroupDesc& g);

GroupDesc canonicalize(const GroupDesc& g, std::uint64_t p);
bool is_canonical(const GroupDesc& g, std::uint64_t p);

void to_json(nlohmann::json& j, const GroupDesc& g);
void from_json(const nlohmann::json& j, GroupDesc& g);

}  // namespace mumford
