#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "mumford/covering.hpp"
#include "mumford/enumerator.hpp"
#include "mumford/error.hpp"
#include "mumford/sampling.hpp"

using namespace mumford;

namespace {

using Elt = std::vector<std::uint64_t>;
using Coset = std::set<Elt>;

struct Oracle {
    std::uint64_t vertices = 0, edges = 0;
    bool connected = false;
};

Elt plus(const Elt& a, const Elt& b, const std::vector<std::uint64_t>& f) {
    Elt c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % f[i];
    return c;
}

std::set<Elt> span(const std::vector<Elt>& gens, const std::vector<std::uint64_t>& f) {
    std::set<Elt> s{Elt(f.size(), 0)};
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& a : std::vector<Elt>(s.begin(), s.end())) {
            for (const auto& g : gens) grew = s.insert(plus(a, g, f)).second || grew;
        }
    }
    return s;
}

std::vector<Elt> elements(const std::vector<std::uint64_t>& f) {
    std::vector<Elt> out{Elt(f.size(), 0)};
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::vector<Elt> next;
        for (const auto& e : out) {
            for (std::uint64_t k = 0; k < f[i]; ++k) {
                Elt x = e;
                x[i] = k;
                next.push_back(x);
            }
        }
        out = next;
    }
    return out;
}

Coset coset(const Elt& x, const std::set<Elt>& h, const std::vector<std::uint64_t>& f) {
    Coset c;
    for (const auto& y : h) c.insert(plus(x, y, f));
    return c;
}

// The quotient of the Bass-Serre tree by the kernel, built from cosets as
// sets of elements, with a naive union-find over (vertex, coset) keys.
Oracle cover_oracle(const DecoratedGraph& g, const AbelianQuotient& quot, const std::vector<EdgeImage>& edge_images) {
    const auto& f = quot.factors;
    const auto all = elements(f);
    std::map<std::string, std::set<Elt>> image;
    std::map<std::pair<std::string, Coset>, std::pair<std::string, Coset>> parent;
    const std::function<std::pair<std::string, Coset>(const std::pair<std::string, Coset>&)> find =
        [&](const std::pair<std::string, Coset>& k) {
            auto it = parent.find(k);
            if (it->second == k) return k;
            const auto root = find(it->second);
            parent[k] = root;
            return root;
        };
    Oracle out;
    for (const auto& v : g.vertices) {
        image[v.id] = span(quot.embeddings.at(v.id), f);
        std::set<Coset> seen;
        for (const auto& x : all) seen.insert(coset(x, image[v.id], f));
        out.vertices += seen.size();
        for (const auto& c : seen) parent[{v.id, c}] = {v.id, c};
    }
    std::size_t k = 0;
    for (const auto* list : {&g.tree_edges, &g.extra_edges}) {
        for (const auto& e : *list) {
            const auto h = span(edge_images.at(k++).generators, f);
            CHECK(h.size() == order(e.group));
            std::set<Coset> seen;
            for (const auto& x : all) {
                if (!seen.insert(coset(x, h, f)).second) continue;
                const auto a = find({e.from, coset(x, image[e.from], f)});
                const auto b = find({e.to, coset(x, image[e.to], f)});
                parent[a] = b;
            }
            out.edges += seen.size();
        }
    }
    std::set<std::pair<std::string, Coset>> roots;
    for (const auto& [key, _] : parent) roots.insert(find(key));
    out.connected = roots.size() == 1;
    return out;
}

AbelianQuotient quotient(std::vector<std::uint64_t> factors, std::map<std::string, std::vector<Elt>> emb) {
    AbelianQuotient q;
    q.factors = std::move(factors);
    q.embeddings = std::move(emb);
    return q;
}

void check_against_oracle(const DecoratedGraph& g, const AbelianQuotient& q) {
    const CoveringGraph c = covering_graph(g, q);
    const Oracle o = cover_oracle(g, q, c.edge_images);
    CHECK(c.vertex_count == o.vertices);
    CHECK(c.edge_count == o.edges);
    CHECK(c.connected == o.connected);
}

}  // namespace

TEST_CASE("covering graph examples") {
    const auto z2z3 = segment(5, GroupDesc::cyclic(2), GroupDesc::cyclic(3));
    const auto q6 = quotient({6}, {{"v1", {{3}}}, {"v2", {{2}}}});
    const auto c = covering_graph(z2z3, q6);
    CHECK(c.vertex_count == 5);
    CHECK(c.edge_count == 6);
    CHECK(betti(c) == 2);

    const auto z3z3 = segment(5, GroupDesc::cyclic(3), GroupDesc::cyclic(3));
    const auto q33 = quotient({3, 3}, {{"v1", {{1, 0}}}, {"v2", {{0, 1}}}});
    const auto c33 = covering_graph(z3z3, q33);
    CHECK(c33.vertex_count == 6);
    CHECK(c33.edge_count == 9);
    CHECK(betti(c33) == 4);

    DecoratedGraph point;
    point.p = 5;
    point.vertices = {{"v1", GroupDesc::cyclic(2)}};
    CHECK(betti(covering_graph(point, quotient({2}, {{"v1", {{1}}}}))) == 0);

    const auto d2z4 = segment(5, GroupDesc::klein4(), GroupDesc::cyclic(4));
    const auto q16 = quotient({2, 2, 4}, {{"v1", {{1, 0, 0}, {0, 1, 0}}}, {"v2", {{0, 0, 1}}}});
    CHECK(betti(covering_graph(d2z4, q16)) == 9);
    CHECK(check_gauss_bonnet(d2z4, q16).holds);
    CHECK(check_gauss_bonnet(d2z4, q16).rhs == Rat(8));
}

TEST_CASE("disconnected covers and bad embeddings") {
    const auto z3z3 = segment(5, GroupDesc::cyclic(3), GroupDesc::cyclic(3));
    const auto same = quotient({3, 3}, {{"v1", {{1, 0}}}, {"v2", {{1, 0}}}});
    CHECK_FALSE(covering_graph(z3z3, same).connected);
    try {
        betti(covering_graph(z3z3, same));
        FAIL("expected DisconnectedCover");
    } catch (const Error& e) {
        CHECK(e.code() == "DisconnectedCover");
    }
    CHECK_THROWS_AS(covering_graph(z3z3, quotient({3, 3}, {{"v1", {{1, 0}}}})), Error);
    CHECK_THROWS_AS(covering_graph(z3z3, quotient({3, 3}, {{"v1", {{0, 0}}}, {"v2", {{0, 1}}}})), Error);
    CHECK_THROWS_AS(covering_graph(z3z3, quotient({6}, {{"v1", {{1}}}, {"v2", {{2}}}})), Error);
}

TEST_CASE("free product kernel rank") {
    CHECK(rank_free_product_kernel(GroupDesc::cyclic(2), GroupDesc::cyclic(3)) == 2);
    CHECK(rank_free_product_kernel(GroupDesc::elem_ab(3, 1), GroupDesc::elem_ab(3, 1)) == 4);
    CHECK(rank_free_product_kernel(GroupDesc::klein4(), GroupDesc::cyclic(4)) == 9);
    for (const auto& a : {GroupDesc::cyclic(2), GroupDesc::cyclic(4), GroupDesc::klein4(), GroupDesc::cyclic(6)}) {
        for (const auto& b : {GroupDesc::cyclic(3), GroupDesc::klein4(), GroupDesc::cyclic(5)}) {
            const auto g = segment(7, a, b);
            const auto q = direct_product_quotient(g);
            CHECK(betti(covering_graph(g, q)) == rank_free_product_kernel(a, b));
        }
    }
}

TEST_CASE("covering graph matches the coset oracle on sampled instances") {
    for (const auto& inst : generate_instances(99, 60)) {
        CHECK(validate(inst.graph).empty());
        check_against_oracle(inst.graph, inst.quotient);
        const auto gb = check_gauss_bonnet(inst.graph, inst.quotient);
        CHECK(gb.holds);
        CHECK(gb.lhs == BigInt(static_cast<unsigned long>(gb.betti)) - 1);
        CHECK(gb.rhs == Rat(BigInt(static_cast<unsigned long>(gb.quotient_order))) * volume(inst.graph));
    }
}

TEST_CASE("Gauss-Bonnet on direct products over enumerated trees") {
    EnumParams params;
    params.p = 5;
    params.max_vertices = 3;
    params.max_group_order = 4;
    params.max_star = 3;
    std::size_t checked = 0;
    for (const auto& g : enumerate_trees(params)) {
        if (std::any_of(g.tree_edges.begin(), g.tree_edges.end(),
                        [](const Edge& e) { return e.group != GroupDesc::trivial(); })) {
            continue;
        }
        ++checked;
        const auto q = direct_product_quotient(g);
        check_against_oracle(g, q);
        CHECK(check_gauss_bonnet(g, q).holds);
    }
    CHECK(checked > 10);
}

TEST_CASE("sampled embeddings give connected covers") {
    std::mt19937_64 rng(5);
    const auto g = path_graph(7, {GroupDesc::cyclic(3), GroupDesc::cyclic(3), GroupDesc::cyclic(3)},
                              {GroupDesc::trivial(), GroupDesc::trivial()});
    const auto q = sample_embedding(g, {3, 3}, rng, 200);
    REQUIRE(q.has_value());
    CHECK(covering_graph(g, *q).connected);
    CHECK(check_gauss_bonnet(g, *q).holds);
    CHECK(sample_embedding(g, {3}, rng, 50).has_value());
    CHECK_FALSE(sample_embedding(segment(7, GroupDesc::cyclic(2), GroupDesc::cyclic(3)), {3}, rng, 50).has_value());
}

TEST_CASE("generated instances are reproducible and bounded") {
    const auto a = generate_instances(7, 20);
    const auto b = generate_instances(7, 20);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].graph == b[i].graph);
        CHECK(nlohmann::json(a[i].quotient) == nlohmann::json(b[i].quotient));
        CHECK(a[i].quotient.order() <= 64);
    }
    for (const auto& f : quotient_catalogue(64)) CHECK(FiniteAbelianGroup(f).order() <= 64);
}

TEST_CASE("quotient JSON round trip") {
    const auto q = quotient({2, 4}, {{"v1", {{1, 0}, {0, 2}}}, {"v2", {{0, 1}}}});
    const nlohmann::json j = q;
    const auto back = j.get<AbelianQuotient>();
    CHECK(back.factors == q.factors);
    CHECK(back.embeddings == q.embeddings);
}
