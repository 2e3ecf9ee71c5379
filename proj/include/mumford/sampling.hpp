#pragma once

// Seeded generators of valid (graph, abelian quotient) pairs, used by the
// Gauss-Bonnet and divisibility checks.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mumford/covering.hpp"
#include "mumford/graph_of_groups.hpp"

namespace mumford {

struct Instance {
    DecoratedGraph graph;
    AbelianQuotient quotient;
};

struct InstanceOptions {
    std::uint64_t max_quotient_order = 64;
    std::size_t max_vertices = 4;
    std::size_t max_extra_edges = 2;
    std::vector<std::uint64_t> primes{2, 3, 5, 7};
};

/// Quotient shapes used by the generator, all of order <= max_order.
std::vector<std::vector<std::uint64_t>> quotient_catalogue(std::uint64_t max_order);

/// Draws one instance (vertex groups are subgroups of Q, edge groups
/// subgroups of the common image, cover connected); nullopt after a bounded
/// number of rejected draws.
std::optional<Instance> random_instance(std::mt19937_64& rng, const std::vector<std::uint64_t>& factors,
                                        std::uint64_t p, const InstanceOptions& options);

/// `count` instances from a fixed seed, cycling through the quotient
/// catalogue and the primes.
std::vector<Instance> generate_instances(std::uint64_t seed, std::size_t count,
                                         const InstanceOptions& options = {});

/// Random generator images for every vertex of g in Q with a connected cover;
/// nullopt if none is found within `attempts` draws.
std::optional<AbelianQuotient> sample_embedding(const DecoratedGraph& g, const std::vector<std::uint64_t>& factors,
                                                std::mt19937_64& rng, int attempts);

}  // namespace mumford
