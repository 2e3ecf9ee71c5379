#include "mumford/findings.hpp"

#include "mumford/json_util.hpp"

namespace mumford {

namespace {

using Element = FiniteAbelianGroup::Element;

constexpr std::uint64_t kPrime = 5;  // prime to every group order below

AmalgamFinding evaluate(std::string name, std::string quotient, DecoratedGraph g, AbelianQuotient q,
                        std::optional<long> published_genus, std::optional<long> published_rank = std::nullopt) {
    AmalgamFinding f;
    f.name = std::move(name);
    f.quotient = std::move(quotient);
    f.mu = volume(g);
    f.genus_gauss_bonnet = genus_from_index(g, q.order()).genus;
    f.genus_covering = BigInt(static_cast<unsigned long>(betti(covering_graph(g, q))));
    if (g.vertices.size() == 2 && g.extra_edges.empty() && order(g.tree_edges[0].group) == 1) {
        f.rank_closed_form =
            BigInt(static_cast<unsigned long>(rank_free_product_kernel(g.vertices[0].group, g.vertices[1].group)));
    }
    if (published_genus) f.published_genus = BigInt(*published_genus);
    if (published_rank) f.published_rank = BigInt(*published_rank);
    f.graph = std::move(g);
    f.q = std::move(q);
    return f;
}

AmalgamFinding free_product(const std::string& name, const std::string& quotient, const GroupDesc& a,
                            const GroupDesc& b, std::optional<long> published_genus,
                            std::optional<long> published_rank = std::nullopt) {
    DecoratedGraph g = segment(kPrime, a, b);
    AbelianQuotient q = direct_product_quotient(g);
    return evaluate(name, quotient, std::move(g), std::move(q), published_genus, published_rank);
}

}  // namespace

bool AmalgamFinding::methods_agree() const {
    return genus_gauss_bonnet == genus_covering && (!rank_closed_form || *rank_closed_form == genus_covering);
}

bool AmalgamFinding::matches_published() const {
    return (!published_genus || *published_genus == genus_gauss_bonnet) &&
           (!published_rank || *published_rank == genus_covering);
}

std::vector<AmalgamFinding> amalgam_findings() {
    const GroupDesc z2 = GroupDesc::cyclic(2), z3 = GroupDesc::cyclic(3), z4 = GroupDesc::cyclic(4);
    const GroupDesc d2 = GroupDesc::klein4();
    std::vector<AmalgamFinding> out;
    out.push_back(free_product("D2*Z4", "D2 x Z4", d2, z4, 2));
    out.push_back(free_product("Z2*Z4", "Z2 x Z4", z2, z4, 2));
    out.push_back(free_product("D2*D2", "Z2^4", d2, d2, 4));
    out.push_back(free_product("Z2*D2", "Z2^3", z2, d2, 2));

    // Three Klein groups amalgamated along Z2's, mapped onto Z2^4 by
    // consecutive pairs of basis vectors.
    DecoratedGraph chain = path_graph(kPrime, {d2, d2, d2}, {z2, z2});
    AbelianQuotient q;
    q.factors = {2, 2, 2, 2};
    const auto basis = [](int i) {
        Element e(4, 0);
        e[static_cast<std::size_t>(i)] = 1;
        return e;
    };
    q.embeddings["v1"] = {basis(0), basis(1)};
    q.embeddings["v2"] = {basis(1), basis(2)};
    q.embeddings["v3"] = {basis(2), basis(3)};
    out.push_back(evaluate("D2*_Z2 D2*_Z2 D2", "Z2^4", std::move(chain), std::move(q), 2));

    out.push_back(free_product("D2*Z3", "D2 x Z3", d2, z3, 3, 3));
    out.push_back(free_product("Z2*Z3", "Z6", z2, z3, 2, 2));
    return out;
}

void to_json(nlohmann::json& j, const AmalgamFinding& f) {
    const auto opt = [](const std::optional<BigInt>& x) { return x ? big_json(*x) : nlohmann::json(nullptr); };
    j = {{"amalgam", f.name},
         {"quotient", f.quotient},
         {"quotient_order", f.q.order()},
         {"mu", f.mu.str()},
         {"genus_gauss_bonnet", big_json(f.genus_gauss_bonnet)},
         {"genus_covering", big_json(f.genus_covering)},
         {"rank_closed_form", opt(f.rank_closed_form)},
         {"published_genus", opt(f.published_genus)},
         {"published_rank", opt(f.published_rank)},
         {"methods_agree", f.methods_agree()},
         {"matches_published", f.matches_published()}};
}

}  // namespace mumford
