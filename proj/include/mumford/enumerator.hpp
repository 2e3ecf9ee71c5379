#pragma once

// Bounded exhaustive search over reduced trees of admissible abelian groups,
// and the censuses built on top of it.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mumford/graph_of_groups.hpp"

namespace mumford {

struct EnumParams {
    std::uint64_t p = 5;
    std::size_t max_vertices = 1;
    std::uint64_t max_group_order = 2;
    std::size_t max_star = 3;
    // Edges at E(r) vertices are trivial.
    bool enforce_p_edge_rule = true;
    // Edges at cyclic prime-to-p vertices are trivial.
    bool enforce_cyclic_edge_rule = true;
    // Restricts vertex groups further (canonical descriptors); unset means
    // every admissible group of order <= max_group_order.
    std::optional<std::vector<GroupDesc>> vertex_groups;
};

/// Throws InvalidInput for bad bounds or a non-prime p.
void check_params(const EnumParams& params);

std::vector<GroupDesc> vertex_group_pool(const EnumParams& params);
/// Edge groups allowed at a vertex with group g: proper subgroup types of g,
/// filtered by the enabled rules.
std::vector<GroupDesc> allowed_edge_groups(const GroupDesc& g, const EnumParams& params);

/// Every reduced valid tree with 1..max_vertices vertices up to isomorphism,
/// sorted by (vertex count, canonical form). Vertex ids v1, v2, ... follow a
/// canonical depth-first order. The result does not depend on `jobs`.
std::vector<DecoratedGraph> enumerate_trees(const EnumParams& params, unsigned jobs = 1);

/// Isomorphism invariant of a tree of groups (extra edges are ignored).
std::string canonical_form(const DecoratedGraph& g);
/// "Z2-Z3", "D2-(Z2)-D2" for paths, the canonical form otherwise.
std::string witness_label(const DecoratedGraph& g);

struct MinVolumeResult {
    Rat min;
    std::vector<DecoratedGraph> witnesses;
};

/// Throws NoPositiveVolume when no enumerated tree has volume > 0.
MinVolumeResult min_positive_volume(const EnumParams& params, unsigned jobs = 1);

struct StarConfig {
    GroupDesc vertex;
    std::vector<GroupDesc> edges;  // sorted
    Rat c;

    /// "(Z3,s=1,[1])"
    std::string label() const;
    bool operator==(const StarConfig& o) const { return vertex == o.vertex && edges == o.edges; }
};

struct CensusReport {
    std::map<Rat, std::vector<StarConfig>> entries;
    std::optional<Rat> min_positive;
    std::vector<StarConfig> expected_zero;
    std::vector<StarConfig> expected_sixth;
    std::vector<std::string> violations;
    std::vector<std::string> findings;
    std::size_t configurations = 0;
};

CensusReport curvature_census(const EnumParams& params);

struct BoundEntry {
    DecoratedGraph graph;
    Rat mu;
    std::optional<Rat> ratio;  // 1/mu when mu > 0
    std::string classification;  // nonpositive | within_3 | boundary_4 | exceptional
};

struct BoundReport {
    std::vector<BoundEntry> entries;
    std::map<std::string, std::size_t> counts;
    std::vector<std::string> exceptional;  // witness labels, sorted
    bool exceptions_within_exclusions = true;
};

BoundReport verify_main_bound(const EnumParams& params, unsigned jobs = 1);

struct ScanEntry {
    DecoratedGraph graph;
    Rat mu;
    bool denominator_ok = false;
    bool embedded = false;
    std::optional<BigInt> genus;
    bool divisible = true;
};

struct ScanReport {
    std::uint64_t ell = 0;
    unsigned s = 0;
    std::vector<ScanEntry> entries;
    std::size_t denominator_failures = 0;
    std::size_t divisibility_failures = 0;
    std::size_t without_embedding = 0;
};

/// Restricts vertex groups to subgroups of Z/2 x Z/2 (ell = 2) or Z/ell,
/// checks the denominator of every volume, then samples embeddings into
/// (Z/ell)^s and checks the divisibility of g - 1. Throws InvalidInput when
/// ell == p.
ScanReport elementary_abelian_scan(const EnumParams& params, std::uint64_t ell, unsigned s, std::uint64_t seed = 1,
                                   unsigned jobs = 1);

/// ell^(s-1) | g-1 for odd ell, 2^(s-2) | g-1 for ell = 2.
bool divisibility_check(std::uint64_t ell, unsigned s, const BigInt& genus);

nlohmann::json tree_record(const DecoratedGraph& g);
void to_json(nlohmann::json& j, const StarConfig& c);
void to_json(nlohmann::json& j, const CensusReport& r);
void to_json(nlohmann::json& j, const BoundEntry& e);
void to_json(nlohmann::json& j, const ScanEntry& e);

}  // namespace mumford
