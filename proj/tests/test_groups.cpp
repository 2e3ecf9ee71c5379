#include <doctest.h>

#include <algorithm>
#include <set>

#include "mumford/error.hpp"
#include "mumford/finite_abelian.hpp"
#include "mumford/group_desc.hpp"

using namespace mumford;

namespace {

// Concrete model of a descriptor as a product of cyclic groups.
std::vector<std::uint64_t> model(const GroupDesc& g) {
    switch (g.kind) {
        case GroupKind::Trivial: return {1};
        case GroupKind::Cyclic: return {g.n};
        case GroupKind::Klein4: return {2, 2};
        case GroupKind::ElemAb: return std::vector<std::uint64_t>(g.r, g.p);
    }
    return {};
}

using Elt = std::vector<std::uint64_t>;

std::vector<Elt> all_elements(const std::vector<std::uint64_t>& f) {
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

Elt plus(const Elt& a, const Elt& b, const std::vector<std::uint64_t>& f) {
    Elt c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % f[i];
    return c;
}

std::set<Elt> closure(std::set<Elt> s, const std::vector<std::uint64_t>& f) {
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& a : std::vector<Elt>(s.begin(), s.end())) {
            for (const auto& b : std::vector<Elt>(s.begin(), s.end())) {
                if (s.insert(plus(a, b, f)).second) grew = true;
            }
        }
    }
    return s;
}

std::uint64_t elt_order(Elt x, const std::vector<std::uint64_t>& f) {
    const Elt zero(f.size(), 0);
    std::uint64_t k = 1;
    for (Elt y = x; y != zero; y = plus(y, x, f)) ++k;
    return k;
}

// Finite abelian groups are determined by their multiset of element orders.
std::multiset<std::uint64_t> order_profile(const std::set<Elt>& s, const std::vector<std::uint64_t>& f) {
    std::multiset<std::uint64_t> out;
    for (const auto& x : s) out.insert(elt_order(x, f));
    return out;
}

std::vector<std::set<Elt>> all_subgroups(const std::vector<std::uint64_t>& f) {
    std::set<std::set<Elt>> seen{{Elt(f.size(), 0)}};
    std::vector<std::set<Elt>> todo(seen.begin(), seen.end());
    const auto elements = all_elements(f);
    while (!todo.empty()) {
        const auto h = todo.back();
        todo.pop_back();
        for (const auto& x : elements) {
            auto s = h;
            s.insert(x);
            auto c = closure(s, f);
            if (seen.insert(c).second) todo.push_back(c);
        }
    }
    return {seen.begin(), seen.end()};
}

bool embeds_oracle(const GroupDesc& h, const GroupDesc& g) {
    const auto hf = model(h), gf = model(g);
    const auto hs = all_elements(hf);
    const auto target = order_profile(std::set<Elt>(hs.begin(), hs.end()), hf);
    for (const auto& s : all_subgroups(gf)) {
        if (order_profile(s, gf) == target) return true;
    }
    return false;
}

std::vector<GroupDesc> sample_groups() {
    return {GroupDesc::trivial(),    GroupDesc::cyclic(2),    GroupDesc::cyclic(3),     GroupDesc::cyclic(4),
            GroupDesc::cyclic(6),    GroupDesc::cyclic(8),    GroupDesc::cyclic(12),    GroupDesc::klein4(),
            GroupDesc::elem_ab(2, 1), GroupDesc::elem_ab(2, 3), GroupDesc::elem_ab(3, 1), GroupDesc::elem_ab(3, 2),
            GroupDesc::elem_ab(5, 1)};
}

}  // namespace

TEST_CASE("orders and labels") {
    CHECK(order(GroupDesc::trivial()) == 1);
    CHECK(order(GroupDesc::cyclic(6)) == 6);
    CHECK(order(GroupDesc::elem_ab(3, 2)) == 9);
    CHECK(order(GroupDesc::klein4()) == 4);
    CHECK(GroupDesc::cyclic(6).label() == "Z6");
    CHECK(GroupDesc::klein4().label() == "D2");
    CHECK(GroupDesc::elem_ab(3, 2).label() == "E(3,2)");
    CHECK(GroupDesc::trivial().label() == "1");
}

TEST_CASE("admissible families by characteristic") {
    const auto p5 = admissible_groups(5, 12);
    const auto has = [](const std::vector<GroupDesc>& v, const GroupDesc& g) {
        return std::find(v.begin(), v.end(), g) != v.end();
    };
    for (std::uint64_t n = 2; n <= 12; ++n) CHECK(has(p5, GroupDesc::cyclic(n)) == (n % 5 != 0));
    CHECK(has(p5, GroupDesc::klein4()));
    CHECK(has(p5, GroupDesc::elem_ab(5, 1)));
    CHECK_FALSE(has(p5, GroupDesc::elem_ab(5, 2)));

    const auto p2 = admissible_groups(2, 16);
    CHECK_FALSE(has(p2, GroupDesc::klein4()));
    CHECK(has(p2, GroupDesc::elem_ab(2, 2)));
    CHECK(has(p2, GroupDesc::elem_ab(2, 4)));
    CHECK_FALSE(has(p2, GroupDesc::cyclic(2)));

    const auto p3 = admissible_groups(3, 9);
    CHECK_FALSE(has(p3, GroupDesc::cyclic(3)));
    CHECK_FALSE(has(p3, GroupDesc::cyclic(6)));
    CHECK(has(p3, GroupDesc::elem_ab(3, 2)));

    for (std::uint64_t p : {2, 3, 5, 7}) {
        for (const auto& g : admissible_groups(p, 48)) {
            CHECK(is_canonical(g, p));
            CHECK(order(g) <= 48);
            int families = 0;
            for (const auto& f : classify_abelian_families(p)) families += f.contains(g) ? 1 : 0;
            CHECK(families == 1);
        }
    }
}

TEST_CASE("ramification profiles") {
    CHECK(ramification_profile(GroupDesc::cyclic(4)).indices == std::vector<std::uint64_t>{4, 4});
    CHECK(ramification_profile(GroupDesc::klein4()).indices == std::vector<std::uint64_t>{2, 2, 2});
    CHECK(ramification_profile(GroupDesc::elem_ab(3, 2)).indices == std::vector<std::uint64_t>{9});
    CHECK_THROWS_AS(ramification_profile(GroupDesc::trivial()), Error);
}

TEST_CASE("subgroup embedding agrees with a subgroup-lattice oracle") {
    CHECK(admissible_subgroup(GroupDesc::cyclic(2), GroupDesc::klein4()));
    CHECK(admissible_subgroup(GroupDesc::cyclic(3), GroupDesc::cyclic(6)));
    CHECK_FALSE(admissible_subgroup(GroupDesc::cyclic(2), GroupDesc::cyclic(3)));
    // Descriptors are compared within one characteristic, where the abstract
    // group determines the descriptor.
    for (const auto& h : sample_groups()) {
        for (const auto& g : sample_groups()) {
            bool same_world = false;
            for (std::uint64_t p : {2, 3, 5, 7}) same_world = same_world || (is_canonical(h, p) && is_canonical(g, p));
            if (!same_world) continue;
            CAPTURE(h.label());
            CAPTURE(g.label());
            CHECK(admissible_subgroup(h, g) == embeds_oracle(h, g));
        }
    }
}

TEST_CASE("subgroup types list every subgroup class") {
    for (const auto& g : {GroupDesc::cyclic(12), GroupDesc::klein4(), GroupDesc::elem_ab(2, 3),
                          GroupDesc::elem_ab(3, 2)}) {
        const auto types = subgroup_types(g);
        std::set<std::uint64_t> oracle_orders;
        for (const auto& s : all_subgroups(model(g))) oracle_orders.insert(s.size());
        std::set<std::uint64_t> orders;
        for (const auto& t : types) orders.insert(order(t));
        CHECK(orders == oracle_orders);
        CHECK(std::is_sorted(types.begin(), types.end(),
                             [](const GroupDesc& a, const GroupDesc& b) { return order(a) < order(b); }));
    }
}

TEST_CASE("canonicalize") {
    CHECK(canonicalize(GroupDesc::cyclic(1), 7) == GroupDesc::trivial());
    CHECK(canonicalize(GroupDesc::klein4(), 2) == GroupDesc::elem_ab(2, 2));
    CHECK(canonicalize(GroupDesc::cyclic(2), 2) == GroupDesc::elem_ab(2, 1));
    CHECK(canonicalize(GroupDesc::cyclic(3), 3) == GroupDesc::elem_ab(3, 1));
    CHECK_THROWS_WITH_AS(canonicalize(GroupDesc::cyclic(6), 3), doctest::Contains("Z6"), Error);
    for (std::uint64_t p : {2, 3, 5}) {
        for (const auto& g : sample_groups()) {
            try {
                const auto c = canonicalize(g, p);
                CHECK(canonicalize(c, p) == c);
                CHECK(order(c) == order(g));
            } catch (const Error& e) {
                CHECK(e.code() == "InadmissibleGroup");
            }
        }
    }
}

TEST_CASE("group JSON round trip") {
    for (const auto& g : sample_groups()) {
        const nlohmann::json j = g;
        CHECK(j.get<GroupDesc>() == g);
    }
    CHECK(nlohmann::json(GroupDesc::elem_ab(3, 2)).dump() == R"({"kind":"elemab","p":3,"r":2})");
    CHECK(nlohmann::json(GroupDesc::cyclic(6)).dump() == R"({"kind":"cyclic","n":6})");
}

TEST_CASE("finite abelian spans and identification") {
    const std::vector<std::uint64_t> f{2, 4, 3};
    const FiniteAbelianGroup q(f);
    CHECK(q.order() == 24);
    for (std::uint64_t i = 0; i < q.order(); ++i) CHECK(q.index(q.element(i)) == i);
    const auto elements = all_elements(f);
    for (std::size_t i = 0; i < elements.size(); i += 5) {
        for (std::size_t j = 0; j < elements.size(); j += 7) {
            const auto span = q.span({elements[i], elements[j]});
            const auto oracle = closure({elements[i], elements[j], Elt(3, 0)}, f);
            CHECK(span.size() == oracle.size());
            for (auto idx : span) CHECK(oracle.count(q.element(idx)) == 1);
            CHECK(q.element_order(elements[i]) == elt_order(elements[i], f));
        }
    }
    const auto klein = q.span({{1, 0, 0}, {0, 2, 0}});
    CHECK(identify_subgroup(q, klein) == GroupDesc::klein4());
    CHECK(identify_subgroup(q, q.span({{1, 1, 1}})) == GroupDesc::cyclic(12));
    CHECK(identify_subgroup(q, q.span({{1, 1, 0}, {0, 0, 1}})) == GroupDesc::cyclic(12));
    CHECK_FALSE(identify_subgroup(q, q.span({{1, 0, 0}, {0, 1, 0}})).has_value());
    const auto gens = standard_generators(q, klein, GroupDesc::cyclic(2));
    REQUIRE(gens.has_value());
    CHECK(gens->size() == 1);
    CHECK(q.element_order((*gens)[0]) == 2);
}
