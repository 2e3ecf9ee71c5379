#pragma once

// The curves (y^q - y)(x^q - x) = c over a field containing F_q, q = p^r,
// with their translation automorphisms and the associated amalgam.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mumford/graph_of_groups.hpp"

namespace mumford {

/// (p^r - 1)^2
BigInt subrao_genus(std::uint64_t p, unsigned r);

/// Two E(p, r) vertices joined by a trivial edge.
DecoratedGraph subrao_graph(std::uint64_t p, unsigned r);

struct SubraoReport {
    std::uint64_t p = 0;
    unsigned r = 0;
    std::uint64_t q = 0;
    BigInt genus;
    BigInt subgroup_order;   // q^2
    BigInt full_aut_order;   // 2 q^2 (q - 1)
    BigInt gauss_bonnet_genus;
    BigInt covering_rank;
    BigInt bound_lhs;        // q^2
    BigInt bound_rhs;        // 2 (g - 1)
    bool bound_holds = false;
    bool bound_equality = false;
    BigInt nakajima_bound;   // 4g + 4
    bool exceeds_nakajima = false;
    std::string modulus;
    std::vector<std::string> flags;
};

/// Throws InvalidInput when p is not prime or r < 1.
SubraoReport subrao_bound_report(std::uint64_t p, unsigned r);

/// Every (a, b) in F_q^2 checked symbolically; returns the number of pairs
/// that passed.
std::uint64_t verify_all_translations(std::uint64_t p, unsigned r);

void to_json(nlohmann::json& j, const SubraoReport& r);
std::string subrao_table(const SubraoReport& r);

}  // namespace mumford
