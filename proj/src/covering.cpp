#include "mumford/covering.hpp"

#include <algorithm>
#include <numeric>

#include "mumford/error.hpp"

namespace mumford {

namespace {

using Element = FiniteAbelianGroup::Element;
using Members = std::vector<std::uint64_t>;

Members vertex_image(const FiniteAbelianGroup& q, const Vertex& v, const AbelianQuotient& quotient) {
    const auto it = quotient.embeddings.find(v.id);
    if (it == quotient.embeddings.end()) {
        throw Error("MissingEmbedding", "no embedding given for vertex '" + v.id + "'", ErrorKind::Input);
    }
    const auto& gens = it->second;
    if (gens.size() != generator_count(v.group)) {
        throw Error("MissingEmbedding", "vertex '" + v.id + "' (" + v.group.label() + ") needs " +
                                            std::to_string(generator_count(v.group)) + " generator images, got " +
                                            std::to_string(gens.size()),
                    ErrorKind::Input);
    }
    for (const auto& x : gens) {
        if (!q.contains(x)) {
            throw Error("InvalidEmbedding", "generator image for '" + v.id + "' is not an element of Q",
                        ErrorKind::Input);
        }
        if (generator_order(v.group) % q.element_order(x) != 0) {
            throw Error("InvalidEmbedding", "generator image for '" + v.id + "' violates the relations of " +
                                                v.group.label());
        }
    }
    Members image = q.span(gens);
    if (image.size() != order(v.group)) {
        throw Error("NonInjectiveEmbedding", "vertex '" + v.id + "' (" + v.group.label() + ") maps onto a subgroup of order " +
                                                 std::to_string(image.size()));
    }
    return image;
}

Members intersect(const Members& a, const Members& b) {
    Members out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// One representative index per element: the smallest element of its coset.
std::vector<std::uint64_t> coset_labels(const FiniteAbelianGroup& q, const Members& subgroup) {
    std::vector<std::uint64_t> label(q.order(), q.order());
    for (std::uint64_t x = 0; x < q.order(); ++x) {
        if (label[x] != q.order()) continue;
        const Element ex = q.element(x);
        for (auto h : subgroup) label[q.index(q.add(ex, q.element(h)))] = x;
    }
    return label;
}

}  // namespace

CoveringGraph covering_graph(const DecoratedGraph& g, const AbelianQuotient& quotient) {
    require_valid(g);
    const FiniteAbelianGroup q(quotient.factors);

    std::vector<Members> images;
    std::vector<std::vector<std::uint64_t>> labels;
    std::vector<std::uint64_t> offset;  // node id base per vertex
    std::uint64_t nodes = 0;
    CoveringGraph out;
    for (const auto& v : g.vertices) {
        images.push_back(vertex_image(q, v, quotient));
        labels.push_back(coset_labels(q, images.back()));
        offset.push_back(nodes);
        nodes += q.order();  // indexed by coset representative
        out.vertex_count += q.order() / images.back().size();
    }

    std::vector<std::uint64_t> parent(nodes);
    std::iota(parent.begin(), parent.end(), std::uint64_t{0});
    const auto find = [&](std::uint64_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    const auto add_edges = [&](const std::vector<Edge>& edges, const std::string& name) {
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const Edge& e = edges[i];
            const std::size_t u = g.index_of(e.from);
            const std::size_t v = g.index_of(e.to);
            const Members common = intersect(images[u], images[v]);
            const auto gens = standard_generators(q, common, e.group);
            if (!gens) {
                throw Error("NonInjectiveEmbedding", name + "[" + std::to_string(i) + "]: no subgroup of type " +
                                                         e.group.label() + " in the common image of '" + e.from +
                                                         "' and '" + e.to + "'");
            }
            out.edge_images.push_back({name + "[" + std::to_string(i) + "]", *gens});
            const Members edge_image = q.span(*gens);
            const auto edge_labels = coset_labels(q, edge_image);
            for (std::uint64_t x = 0; x < q.order(); ++x) {
                if (edge_labels[x] != x) continue;
                ++out.edge_count;
                const auto a = find(offset[u] + labels[u][x]);
                const auto b = find(offset[v] + labels[v][x]);
                if (a != b) parent[a] = b;
            }
        }
    };
    add_edges(g.tree_edges, "tree_edges");
    add_edges(g.extra_edges, "extra_edges");

    std::uint64_t components = 0;
    for (std::size_t vi = 0; vi < g.vertices.size(); ++vi) {
        for (std::uint64_t x = 0; x < q.order(); ++x) {
            if (labels[vi][x] == x && find(offset[vi] + x) == offset[vi] + x) ++components;
        }
    }
    out.connected = components == 1;
    return out;
}

std::uint64_t betti(const CoveringGraph& c) {
    if (!c.connected) throw Error("DisconnectedCover", "the covering graph is disconnected (Q is not generated)");
    return c.edge_count + 1 - c.vertex_count;
}

std::uint64_t rank_free_product_kernel(const GroupDesc& a, const GroupDesc& b) {
    if (order(a) == 1 || order(b) == 1) {
        throw Error("TrivialFactor", "free product kernel rank needs two nontrivial factors", ErrorKind::Input);
    }
    return (order(a) - 1) * (order(b) - 1);
}

AbelianQuotient direct_product_quotient(const DecoratedGraph& g) {
    for (const auto* edges : {&g.tree_edges, &g.extra_edges}) {
        for (const auto& e : *edges) {
            if (order(e.group) != 1) {
                throw Error("InvalidQuotient", "direct product quotient needs trivial edge groups", ErrorKind::Input);
            }
        }
    }
    AbelianQuotient q;
    std::vector<std::pair<std::size_t, unsigned>> blocks;  // first factor, generator count
    for (const auto& v : g.vertices) {
        blocks.emplace_back(q.factors.size(), generator_count(v.group));
        for (unsigned i = 0; i < generator_count(v.group); ++i) q.factors.push_back(generator_order(v.group));
    }
    for (std::size_t vi = 0; vi < g.vertices.size(); ++vi) {
        std::vector<Element> gens;
        for (unsigned i = 0; i < blocks[vi].second; ++i) {
            Element x(q.factors.size(), 0);
            x[blocks[vi].first + i] = 1;
            gens.push_back(std::move(x));
        }
        q.embeddings[g.vertices[vi].id] = std::move(gens);
    }
    return q;
}

GaussBonnetReport check_gauss_bonnet(const DecoratedGraph& g, const AbelianQuotient& q) {
    GaussBonnetReport r;
    r.cover = covering_graph(g, q);
    r.betti = betti(r.cover);
    r.quotient_order = q.order();
    r.mu = volume(g);
    r.lhs = BigInt(static_cast<unsigned long>(r.betti)) - 1;
    r.rhs = Rat(BigInt(static_cast<unsigned long>(r.quotient_order))) * r.mu;
    r.holds = Rat(r.lhs) == r.rhs;
    return r;
}

void to_json(nlohmann::json& j, const AbelianQuotient& q) {
    nlohmann::json emb = nlohmann::json::object();
    for (const auto& [id, gens] : q.embeddings) emb[id] = gens;
    j = {{"factors", q.factors}, {"embeddings", emb}};
}

void from_json(const nlohmann::json& j, AbelianQuotient& q) {
    try {
        q = AbelianQuotient{};
        q.factors = j.at("factors").get<std::vector<std::uint64_t>>();
        for (const auto& [id, gens] : j.at("embeddings").items()) {
            q.embeddings[id] = gens.get<std::vector<FiniteAbelianGroup::Element>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error("Parse", std::string("bad quotient JSON: ") + e.what(), ErrorKind::Input);
    }
}

void to_json(nlohmann::json& j, const GaussBonnetReport& r) {
    nlohmann::json images = nlohmann::json::array();
    for (const auto& e : r.cover.edge_images) images.push_back({{"edge", e.edge}, {"generators", e.generators}});
    j = {{"quotient_order", r.quotient_order},
         {"mu", r.mu.str()},
         {"cover_vertices", r.cover.vertex_count},
         {"cover_edges", r.cover.edge_count},
         {"connected", r.cover.connected},
         {"betti", r.betti},
         {"genus", r.betti},
         {"lhs", r.lhs.get_str()},
         {"rhs", r.rhs.str()},
         {"holds", r.holds},
         {"edge_images", images}};
}

}  // namespace mumford
