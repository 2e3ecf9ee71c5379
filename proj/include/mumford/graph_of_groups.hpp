#pragma once

// Finite graphs of finite abelian groups: a spanning tree of representatives
// plus the remaining (extra) edges, each vertex and edge decorated with its
// stabilizer type.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mumford/group_desc.hpp"
#include "mumford/rational.hpp"

namespace mumford {

struct Vertex {
    std::string id;
    GroupDesc group;
    bool operator==(const Vertex&) const = default;
};

struct Edge {
    std::string from;
    std::string to;
    GroupDesc group;
    bool operator==(const Edge&) const = default;
};

struct DecoratedGraph {
    std::uint64_t p = 2;
    std::vector<Vertex> vertices;
    std::vector<Edge> tree_edges;
    std::vector<Edge> extra_edges;

    bool has_vertex(const std::string& id) const;
    const GroupDesc& group_of(const std::string& id) const;
    std::size_t index_of(const std::string& id) const;

    bool operator==(const DecoratedGraph&) const = default;
};

struct Violation {
    std::string where;  // "vertex v1", "tree_edges[0]", "graph"
    std::string message;
};

std::vector<Violation> validate(const DecoratedGraph& g);
/// Throws Error("InvalidGraph") listing every violation.
void require_valid(const DecoratedGraph& g);

/// Sum of 1/f over extra edges plus 1/e over tree edges minus 1/v over vertices.
Rat volume(const DecoratedGraph& g);
/// The same sum restricted to the spanning tree.
Rat tree_volume(const DecoratedGraph& g);
/// Half the sum of 1/|N_e| over tree edges at v, minus 1/|N_v|.
Rat curvature(const DecoratedGraph& g, const std::string& vertex_id);
std::map<std::string, Rat> curvatures(const DecoratedGraph& g);

/// |N_v| > |N_e| for every tree edge and both of its endpoints.
bool is_reduced(const DecoratedGraph& g);
/// Contracts tree edges whose group has the order of an endpoint group, in
/// edge order, until none is left. The surviving vertex keeps its id.
DecoratedGraph reduce(const DecoratedGraph& g);

struct GenusResult {
    BigInt genus;
    bool below_two = false;  // outside the g >= 2 regime
};

/// 1 + index * volume(g); throws NonIntegralGenus when that is not an integer.
GenusResult genus_from_index(const DecoratedGraph& g, std::uint64_t index);

/// Convenience constructor: v1 -(edge)- v2.
DecoratedGraph segment(std::uint64_t p, const GroupDesc& a, const GroupDesc& b,
                       const GroupDesc& edge = GroupDesc::trivial());
/// Path v1 - v2 - ... with the given vertex and edge groups.
DecoratedGraph path_graph(std::uint64_t p, const std::vector<GroupDesc>& vertex_groups,
                          const std::vector<GroupDesc>& edge_groups);

void to_json(nlohmann::json& j, const DecoratedGraph& g);
void from_json(const nlohmann::json& j, DecoratedGraph& g);

}  // namespace mumford
