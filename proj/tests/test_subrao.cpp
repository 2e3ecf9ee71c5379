#include <doctest.h>

#include <algorithm>

#include "mumford/covering.hpp"
#include "mumford/error.hpp"
#include "mumford/findings.hpp"
#include "mumford/subrao.hpp"

using namespace mumford;

namespace {

bool has_flag(const SubraoReport& r, const std::string& flag) {
    return std::find(r.flags.begin(), r.flags.end(), flag) != r.flags.end();
}

}  // namespace

TEST_CASE("genus formula") {
    CHECK(subrao_genus(2, 1) == 1);
    CHECK(subrao_genus(3, 1) == 4);
    CHECK(subrao_genus(2, 2) == 9);
    CHECK(subrao_genus(3, 2) == 64);
}

TEST_CASE("amalgam graph") {
    const auto g = subrao_graph(3, 1);
    CHECK(g.vertices.size() == 2);
    CHECK(g.vertices[0].group == GroupDesc::elem_ab(3, 1));
    CHECK(g.tree_edges.at(0).group == GroupDesc::trivial());
    CHECK(genus_from_index(g, 9).genus == 4);
    CHECK(genus_from_index(subrao_graph(2, 2), 16).genus == 9);
    const auto degenerate = genus_from_index(subrao_graph(2, 1), 4);
    CHECK(degenerate.genus == 1);
    CHECK(degenerate.below_two);
    for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 1}, {5, 1}}) {
        const auto h = subrao_graph(p, r);
        CHECK(betti(covering_graph(h, direct_product_quotient(h))) == subrao_genus(p, r));
    }
}

TEST_CASE("bound reports") {
    const auto q3 = subrao_bound_report(3, 1);
    CHECK(q3.genus == 4);
    CHECK(q3.bound_lhs == 9);
    CHECK(q3.bound_rhs == 6);
    CHECK_FALSE(q3.bound_holds);
    CHECK(has_flag(q3, "bound_violated"));

    const auto q4 = subrao_bound_report(2, 2);
    CHECK(q4.genus == 9);
    CHECK(q4.bound_lhs == 16);
    CHECK(q4.bound_rhs == 16);
    CHECK(q4.bound_holds);
    CHECK(q4.bound_equality);
    CHECK(q4.modulus == "t^2+t+1");

    const auto q2 = subrao_bound_report(2, 1);
    CHECK(has_flag(q2, "genus_below_two"));

    const auto q5 = subrao_bound_report(5, 1);
    CHECK(q5.bound_holds);
    CHECK(q5.flags.empty());
    CHECK(q5.full_aut_order == 2 * 25 * 4);
    CHECK(q5.gauss_bonnet_genus == q5.genus);
    CHECK(q5.covering_rank == q5.genus);

    CHECK_THROWS_AS(subrao_bound_report(4, 1), Error);
    CHECK_THROWS_AS(subrao_bound_report(3, 0), Error);
    const nlohmann::json j = q4;
    CHECK(j.at("genus") == 9);
}

TEST_CASE("every translation is an automorphism") {
    CHECK(verify_all_translations(2, 2) == 16);
    CHECK(verify_all_translations(3, 1) == 9);
    CHECK(verify_all_translations(2, 3) == 64);
}

TEST_CASE("amalgam findings are internally consistent") {
    const auto rows = amalgam_findings();
    REQUIRE(rows.size() == 7);
    for (const auto& f : rows) {
        CAPTURE(f.name);
        CHECK(f.methods_agree());
        CHECK(f.genus_gauss_bonnet == f.genus_covering);
        CHECK(genus_from_index(f.graph, f.q.order()).genus == f.genus_gauss_bonnet);
        if (f.rank_closed_form) CHECK(*f.rank_closed_form == f.genus_covering);
    }
    const auto find = [&](const std::string& name) {
        return *std::find_if(rows.begin(), rows.end(), [&](const AmalgamFinding& f) { return f.name == name; });
    };
    CHECK(find("D2*Z4").genus_gauss_bonnet == 9);
    CHECK(find("Z2*Z4").genus_gauss_bonnet == 3);
    CHECK(find("D2*D2").genus_gauss_bonnet == 9);
    CHECK(find("Z2*Z3").genus_gauss_bonnet == 2);
    CHECK(find("Z2*Z3").matches_published());
    CHECK_FALSE(find("D2*Z4").matches_published());
    CHECK(find("D2*Z3").genus_gauss_bonnet == 6);
}
