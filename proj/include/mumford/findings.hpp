#pragma once

// Amalgams whose genus is published elsewhere, recomputed two
// independent ways: Gauss-Bonnet on the quotient tree and the rank of the
// covering graph (plus the free-product closed form where it applies).

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mumford/covering.hpp"

namespace mumford {

struct AmalgamFinding {
    std::string name;       // "D2*Z4"
    std::string quotient;   // "D2 x Z4"
    DecoratedGraph graph;
    AbelianQuotient q;
    Rat mu;
    BigInt genus_gauss_bonnet;
    BigInt genus_covering;
    std::optional<BigInt> rank_closed_form;
    std::optional<BigInt> published_genus;
    std::optional<BigInt> published_rank;

    bool methods_agree() const;
    bool matches_published() const;
};

/// The amalgams with a published 4(g-1) genus, then D2*Z3 and Z2*Z3.
std::vector<AmalgamFinding> amalgam_findings();

void to_json(nlohmann::json& j, const AmalgamFinding& f);

}  // namespace mumford
