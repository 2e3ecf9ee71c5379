#include "mumford/sampling.hpp"

#include <algorithm>

#include "mumford/error.hpp"

namespace mumford {

namespace {

using Element = FiniteAbelianGroup::Element;

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; }

Element random_element(std::mt19937_64& rng, const FiniteAbelianGroup& q) {
    return q.element(draw(rng, q.order()));
}

std::vector<std::uint64_t> intersect(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// A random admissible subgroup of `inside` (given by sorted members),
// returned with its canonical type; nullopt if the draw is not admissible.
std::optional<std::pair<GroupDesc, std::vector<std::uint64_t>>> random_subgroup(
    std::mt19937_64& rng, const FiniteAbelianGroup& q, const std::vector<std::uint64_t>& inside, std::uint64_t p,
    bool allow_trivial) {
    const std::uint64_t gens = draw(rng, 3);  // 0, 1 or 2 generators
    if (gens == 0 && !allow_trivial) return std::nullopt;
    std::vector<Element> chosen;
    for (std::uint64_t i = 0; i < gens; ++i) chosen.push_back(q.element(inside[draw(rng, inside.size())]));
    auto members = q.span(chosen);
    const auto type = identify_subgroup(q, members);
    if (!type) return std::nullopt;
    try {
        const GroupDesc canonical = canonicalize(*type, p);
        if (order(canonical) == 1 && !allow_trivial) return std::nullopt;
        return std::make_pair(canonical, std::move(members));
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::optional<std::vector<Element>> random_generators(std::mt19937_64& rng, const FiniteAbelianGroup& q,
                                                      const GroupDesc& type, const std::vector<Element>& preferred) {
    const unsigned count = generator_count(type);
    const std::uint64_t gen_order = generator_order(type);
    std::vector<Element> gens;
    for (unsigned i = 0; i < count; ++i) {
        bool found = false;
        for (int tries = 0; tries < 64 && !found; ++tries) {
            Element x = (!preferred.empty() && draw(rng, 2) == 0) ? preferred[draw(rng, preferred.size())]
                                                                  : random_element(rng, q);
            if (q.element_order(x) != gen_order) continue;
            gens.push_back(std::move(x));
            found = true;
        }
        if (!found) return std::nullopt;
    }
    if (q.span(gens).size() != order(type)) return std::nullopt;
    return gens;
}

}  // namespace

std::vector<std::vector<std::uint64_t>> quotient_catalogue(std::uint64_t max_order) {
    const std::vector<std::vector<std::uint64_t>> all = {
        {2},          {3},          {4},          {5},       {6},       {7},          {2, 2},       {2, 4},
        {3, 3},       {2, 6},       {4, 4},       {5, 5},    {2, 2, 2}, {2, 2, 3},    {3, 3, 3},    {7, 7},
        {2, 2, 2, 2}, {2, 2, 4},    {2, 12},      {6, 6},    {4, 8},    {2, 2, 2, 3}, {3, 3, 2},    {2, 2, 2, 2, 2},
        {2, 2, 2, 2, 2, 2},         {8, 8},       {4, 4, 4}, {2, 2, 6}, {5, 10},      {12},         {3, 9}};
    std::vector<std::vector<std::uint64_t>> out;
    for (const auto& f : all) {
        std::uint64_t n = 1;
        for (auto m : f) n *= m;
        if (n <= max_order) out.push_back(f);
    }
    return out;
}

std::optional<Instance> random_instance(std::mt19937_64& rng, const std::vector<std::uint64_t>& factors,
                                        std::uint64_t p, const InstanceOptions& options) {
    const FiniteAbelianGroup q(factors);
    std::vector<std::uint64_t> whole(q.order());
    for (std::uint64_t i = 0; i < q.order(); ++i) whole[i] = i;

    for (int attempt = 0; attempt < 200; ++attempt) {
        Instance inst;
        DecoratedGraph& g = inst.graph;
        g.p = p;
        const std::size_t n = 1 + draw(rng, options.max_vertices);
        std::vector<std::vector<std::uint64_t>> images;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            std::optional<std::pair<GroupDesc, std::vector<std::uint64_t>>> sub;
            for (int t = 0; t < 32 && !sub; ++t) sub = random_subgroup(rng, q, whole, p, false);
            if (!sub) {
                ok = false;
                break;
            }
            const std::string id = "v" + std::to_string(i + 1);
            const auto gens = standard_generators(q, sub->second, sub->first);
            if (!gens) {
                ok = false;
                break;
            }
            g.vertices.push_back({id, sub->first});
            inst.quotient.embeddings[id] = *gens;
            images.push_back(sub->second);
        }
        if (!ok) continue;

        const auto edge_between = [&](std::size_t a, std::size_t b) -> std::optional<Edge> {
            const auto common = intersect(images[a], images[b]);
            for (int t = 0; t < 16; ++t) {
                auto sub = random_subgroup(rng, q, common, p, true);
                if (sub) return Edge{g.vertices[a].id, g.vertices[b].id, sub->first};
            }
            return std::nullopt;
        };
        for (std::size_t i = 1; i < n && ok; ++i) {
            const auto e = edge_between(draw(rng, i), i);
            if (!e) ok = false;
            else g.tree_edges.push_back(*e);
        }
        const std::size_t extra = draw(rng, options.max_extra_edges + 1);
        for (std::size_t i = 0; i < extra && ok; ++i) {
            const auto e = edge_between(draw(rng, n), draw(rng, n));
            if (!e) ok = false;
            else g.extra_edges.push_back(*e);
        }
        if (!ok || !validate(g).empty()) continue;

        inst.quotient.factors = factors;
        try {
            if (covering_graph(g, inst.quotient).connected) return inst;
        } catch (const Error&) {
            // edge type not realizable inside the common image; redraw
        }
    }
    return std::nullopt;
}

std::vector<Instance> generate_instances(std::uint64_t seed, std::size_t count, const InstanceOptions& options) {
    std::mt19937_64 rng(seed);
    const auto catalogue = quotient_catalogue(options.max_quotient_order);
    std::vector<Instance> out;
    std::size_t round = 0;
    while (out.size() < count && round < count * 20) {
        const auto& factors = catalogue[round % catalogue.size()];
        const std::uint64_t p = options.primes[(round / catalogue.size()) % options.primes.size()];
        ++round;
        if (auto inst = random_instance(rng, factors, p, options)) out.push_back(std::move(*inst));
    }
    return out;
}

std::optional<AbelianQuotient> sample_embedding(const DecoratedGraph& g, const std::vector<std::uint64_t>& factors,
                                                std::mt19937_64& rng, int attempts) {
    const FiniteAbelianGroup q(factors);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        AbelianQuotient quotient;
        quotient.factors = factors;
        bool ok = true;
        // Place vertices along the tree so that a child can reuse elements of
        // its parent's image, which is needed for nontrivial edge groups.
        std::vector<bool> placed(g.vertices.size(), false);
        std::vector<std::size_t> order_of_placement{0};
        placed[0] = true;
        std::map<std::size_t, std::size_t> parent_of;
        for (std::size_t head = 0; head < order_of_placement.size(); ++head) {
            const std::size_t cur = order_of_placement[head];
            for (const auto& e : g.tree_edges) {
                const std::size_t a = g.index_of(e.from), b = g.index_of(e.to);
                const std::size_t other = a == cur ? b : (b == cur ? a : cur);
                if (other == cur || placed[other]) continue;
                placed[other] = true;
                parent_of[other] = cur;
                order_of_placement.push_back(other);
            }
        }
        for (std::size_t vi : order_of_placement) {
            std::vector<Element> preferred;
            if (auto it = parent_of.find(vi); it != parent_of.end()) {
                const auto& parent_gens = quotient.embeddings[g.vertices[it->second].id];
                for (auto idx : q.span(parent_gens)) preferred.push_back(q.element(idx));
            }
            auto gens = random_generators(rng, q, g.vertices[vi].group, preferred);
            if (!gens) {
                ok = false;
                break;
            }
            quotient.embeddings[g.vertices[vi].id] = std::move(*gens);
        }
        if (!ok) continue;
        try {
            if (covering_graph(g, quotient).connected) return quotient;
        } catch (const Error&) {
            // edges not realizable with this draw
        }
    }
    return std::nullopt;
}

}  // namespace mumford
