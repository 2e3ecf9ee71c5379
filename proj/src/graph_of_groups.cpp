#include "mumford/graph_of_groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "mumford/error.hpp"

namespace mumford {

namespace {

Rat inverse_order(const GroupDesc& g) { return Rat(BigInt(1), BigInt(static_cast<unsigned long>(order(g)))); }

void check_edges(const DecoratedGraph& g, const std::vector<Edge>& edges, const std::string& name,
                 std::vector<Violation>& out) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        const std::string where = name + "[" + std::to_string(i) + "]";
        bool endpoints_ok = true;
        for (const auto* id : {&e.from, &e.to}) {
            if (!g.has_vertex(*id)) {
                out.push_back({where, "unknown endpoint '" + *id + "'"});
                endpoints_ok = false;
            }
        }
        if (!is_canonical(e.group, g.p)) {
            out.push_back({where, e.group.label() + " is not a canonical stabilizer for p=" + std::to_string(g.p)});
        }
        if (!endpoints_ok) continue;
        for (const auto* id : {&e.from, &e.to}) {
            const GroupDesc& vg = g.group_of(*id);
            if (!admissible_subgroup(e.group, vg)) {
                out.push_back({where, e.group.label() + " does not embed in " + vg.label() + " at " + *id});
            }
        }
    }
}

}  // namespace

bool DecoratedGraph::has_vertex(const std::string& id) const {
    return std::any_of(vertices.begin(), vertices.end(), [&](const Vertex& v) { return v.id == id; });
}

std::size_t DecoratedGraph::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].id == id) return i;
    }
    throw Error("UnknownVertex", "no vertex with id '" + id + "'", ErrorKind::Input);
}

const GroupDesc& DecoratedGraph::group_of(const std::string& id) const { return vertices[index_of(id)].group; }

std::vector<Violation> validate(const DecoratedGraph& g) {
    std::vector<Violation> out;
    if (!is_prime(g.p)) out.push_back({"graph", "p=" + std::to_string(g.p) + " is not prime"});
    if (g.vertices.empty()) out.push_back({"graph", "no vertices"});

    std::set<std::string> ids;
    for (const auto& v : g.vertices) {
        if (!ids.insert(v.id).second) out.push_back({"vertex " + v.id, "duplicate id"});
        if (is_prime(g.p) && !is_canonical(v.group, g.p)) {
            out.push_back({"vertex " + v.id,
                           v.group.label() + " is not a canonical stabilizer for p=" + std::to_string(g.p)});
        }
    }
    if (!is_prime(g.p)) return out;

    check_edges(g, g.tree_edges, "tree_edges", out);
    check_edges(g, g.extra_edges, "extra_edges", out);

    if (!g.vertices.empty() && g.tree_edges.size() + 1 != g.vertices.size()) {
        out.push_back({"graph", "tree_edges has " + std::to_string(g.tree_edges.size()) +
                                    " edges; a spanning tree on " + std::to_string(g.vertices.size()) +
                                    " vertices needs " + std::to_string(g.vertices.size() - 1)});
    }
    // Union-find over the tree edges: a cycle or a second component is a violation.
    std::vector<std::size_t> parent(g.vertices.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < g.tree_edges.size(); ++i) {
        const Edge& e = g.tree_edges[i];
        if (!g.has_vertex(e.from) || !g.has_vertex(e.to)) continue;
        const auto a = find(g.index_of(e.from));
        const auto b = find(g.index_of(e.to));
        if (a == b) {
            out.push_back({"tree_edges[" + std::to_string(i) + "]", "closes a cycle in the spanning tree"});
        } else {
            parent[a] = b;
        }
    }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) roots.insert(find(i));
    if (roots.size() > 1) {
        out.push_back({"graph", "tree_edges leave " + std::to_string(roots.size()) + " components"});
    }
    return out;
}

void require_valid(const DecoratedGraph& g) {
    const auto violations = validate(g);
    if (violations.empty()) return;
    std::string message = "invalid decorated graph:";
    for (const auto& v : violations) message += " [" + v.where + ": " + v.message + "]";
    throw Error("InvalidGraph", message, ErrorKind::Input);
}

Rat tree_volume(const DecoratedGraph& g) {
    Rat mu;
    for (const auto& e : g.tree_edges) mu += inverse_order(e.group);
    for (const auto& v : g.vertices) mu -= inverse_order(v.group);
    return mu;
}

Rat volume(const DecoratedGraph& g) {
    Rat mu = tree_volume(g);
    for (const auto& e : g.extra_edges) mu += inverse_order(e.group);
    return mu;
}

Rat curvature(const DecoratedGraph& g, const std::string& vertex_id) {
    const GroupDesc& vg = g.group_of(vertex_id);
    Rat star;
    for (const auto& e : g.tree_edges) {
        if (e.from == vertex_id) star += inverse_order(e.group);
        if (e.to == vertex_id) star += inverse_order(e.group);
    }
    return star / Rat(2) - inverse_order(vg);
}

std::map<std::string, Rat> curvatures(const DecoratedGraph& g) {
    std::map<std::string, Rat> out;
    for (const auto& v : g.vertices) out.emplace(v.id, curvature(g, v.id));
    return out;
}

bool is_reduced(const DecoratedGraph& g) {
    for (const auto& e : g.tree_edges) {
        const auto eo = order(e.group);
        if (eo >= order(g.group_of(e.from)) || eo >= order(g.group_of(e.to))) return false;
    }
    return true;
}

DecoratedGraph reduce(const DecoratedGraph& input) {
    DecoratedGraph g = input;
    for (;;) {
        auto it = std::find_if(g.tree_edges.begin(), g.tree_edges.end(), [&](const Edge& e) {
            const auto eo = order(e.group);
            return eo == order(g.group_of(e.from)) || eo == order(g.group_of(e.to));
        });
        if (it == g.tree_edges.end()) return g;
        // The endpoint whose group equals the edge group is absorbed into the other.
        const bool absorb_from = order(it->group) == order(g.group_of(it->from));
        const std::string gone = absorb_from ? it->from : it->to;
        const std::string kept = absorb_from ? it->to : it->from;
        g.tree_edges.erase(it);
        g.vertices.erase(g.vertices.begin() + static_cast<std::ptrdiff_t>(g.index_of(gone)));
        for (auto* edges : {&g.tree_edges, &g.extra_edges}) {
            for (auto& e : *edges) {
                if (e.from == gone) e.from = kept;
                if (e.to == gone) e.to = kept;
            }
        }
    }
}

GenusResult genus_from_index(const DecoratedGraph& g, std::uint64_t index) {
    if (index == 0) throw Error("InvalidIndex", "index must be positive", ErrorKind::Input);
    const Rat value = Rat(1) + Rat(BigInt(static_cast<unsigned long>(index))) * volume(g);
    if (!value.is_integer()) {
        throw Error("NonIntegralGenus", "1 + " + std::to_string(index) + " * mu = " + value.str() +
                                            " is not an integer; no normal subgroup of that index exists");
    }
    GenusResult out;
    out.genus = value.num();
    out.below_two = out.genus < 2;
    return out;
}

DecoratedGraph segment(std::uint64_t p, const GroupDesc& a, const GroupDesc& b, const GroupDesc& edge) {
    return path_graph(p, {a, b}, {edge});
}

DecoratedGraph path_graph(std::uint64_t p, const std::vector<GroupDesc>& vertex_groups,
                          const std::vector<GroupDesc>& edge_groups) {
    if (vertex_groups.empty() || edge_groups.size() + 1 != vertex_groups.size()) {
        throw Error("InvalidGraph", "a path needs one edge group fewer than vertex groups", ErrorKind::Input);
    }
    DecoratedGraph g;
    g.p = p;
    for (std::size_t i = 0; i < vertex_groups.size(); ++i) {
        g.vertices.push_back({"v" + std::to_string(i + 1), vertex_groups[i]});
    }
    for (std::size_t i = 0; i < edge_groups.size(); ++i) {
        g.tree_edges.push_back({"v" + std::to_string(i + 1), "v" + std::to_string(i + 2), edge_groups[i]});
    }
    return g;
}

void to_json(nlohmann::json& j, const DecoratedGraph& g) {
    const auto edges = [](const std::vector<Edge>& list) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& e : list) arr.push_back({{"from", e.from}, {"to", e.to}, {"group", e.group}});
        return arr;
    };
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& v : g.vertices) vertices.push_back({{"id", v.id}, {"group", v.group}});
    j = {{"p", g.p}, {"vertices", vertices}, {"tree_edges", edges(g.tree_edges)}, {"extra_edges", edges(g.extra_edges)}};
}

void from_json(const nlohmann::json& j, DecoratedGraph& g) {
    try {
        g = DecoratedGraph{};
        g.p = j.at("p").get<std::uint64_t>();
        for (const auto& v : j.at("vertices")) {
            g.vertices.push_back({v.at("id").get<std::string>(), v.at("group").get<GroupDesc>()});
        }
        const auto read_edges = [](const nlohmann::json& arr, std::vector<Edge>& out) {
            for (const auto& e : arr) {
                out.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                               e.at("group").get<GroupDesc>()});
            }
        };
        if (j.contains("tree_edges")) read_edges(j.at("tree_edges"), g.tree_edges);
        if (j.contains("extra_edges")) read_edges(j.at("extra_edges"), g.extra_edges);
    } catch (const nlohmann::json::exception& e) {
        throw Error("Parse", std::string("bad graph JSON: ") + e.what(), ErrorKind::Input);
    }
}

}  // namespace mumford
