#pragma once

// Independent route to the rank of Gamma = ker(N -> Q): build the quotient of
// the Bass-Serre tree by Gamma as an explicit graph of cosets and read off
// its first Betti number.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mumford/finite_abelian.hpp"
#include "mumford/graph_of_groups.hpp"

namespace mumford {

/// The finite abelian quotient N/Gamma together with the images of the
/// standard generators of each vertex group.
struct AbelianQuotient {
    std::vector<std::uint64_t> factors;
    std::map<std::string, std::vector<FiniteAbelianGroup::Element>> embeddings;

    std::uint64_t order() const { return FiniteAbelianGroup(factors).order(); }
};

struct EdgeImage {
    std::string edge;  // "tree_edges[i]" / "extra_edges[i]"
    std::vector<FiniteAbelianGroup::Element> generators;
};

struct CoveringGraph {
    std::uint64_t vertex_count = 0;
    std::uint64_t edge_count = 0;
    bool connected = false;
    std::vector<EdgeImage> edge_images;
};

CoveringGraph covering_graph(const DecoratedGraph& g, const AbelianQuotient& q);

/// edge_count - vertex_count + 1; throws DisconnectedCover.
std::uint64_t betti(const CoveringGraph& c);

/// (|A| - 1)(|B| - 1), the rank of the kernel of A * B -> A x B.
std::uint64_t rank_free_product_kernel(const GroupDesc& a, const GroupDesc& b);

/// Q = product of the vertex groups, each vertex embedded on its own block of
/// coordinates. Only valid when every edge group is trivial.
AbelianQuotient direct_product_quotient(const DecoratedGraph& g);

struct GaussBonnetReport {
    std::uint64_t quotient_order = 0;
    Rat mu;
    std::uint64_t betti = 0;
    BigInt lhs;  // betti - 1
    Rat rhs;     // |Q| * mu
    bool holds = false;
    CoveringGraph cover;
};

GaussBonnetReport check_gauss_bonnet(const DecoratedGraph& g, const AbelianQuotient& q);

void to_json(nlohmann::json& j, const AbelianQuotient& q);
void from_json(const nlohmann::json& j, AbelianQuotient& q);
void to_json(nlohmann::json& j, const GaussBonnetReport& r);

}  // namespace mumford
