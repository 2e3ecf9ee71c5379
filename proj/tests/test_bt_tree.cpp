#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mumford/bt_tree.hpp"
#include "mumford/error.hpp"

using namespace mumford;

namespace {

Rat q(long a, long b = 1) { return Rat(BigInt(a), BigInt(b)); }
ProjMat mat(long a, long b, long c, long d) { return {q(a), q(b), q(c), q(d)}; }

long min_vp(const ProjMat& x, std::uint64_t p) {
    return std::min({vp(x.a, p), vp(x.b, p), vp(x.c, p), vp(x.d, p)});
}

// Lattice oracle: the column lattices of A and B are homothetic iff
// adj(A) B lies in p^m GL2(Z_p) for some m; their distance is the gap
// between the elementary divisors of adj(A) B.
long lattice_distance(const ProjMat& a, const ProjMat& b, std::uint64_t p) {
    const ProjMat x = a.adjugate() * b;
    return vp(x.det(), p) - 2 * min_vp(x, p);
}

bool same_lattice(const ProjMat& a, const ProjMat& b, std::uint64_t p) { return lattice_distance(a, b, p) == 0; }

const std::vector<std::uint64_t> kPrimes{2, 3, 5, 7};

ProjMat random_matrix(std::mt19937_64& rng, long bound = 50) {
    for (;;) {
        auto r = [&] { return q(static_cast<long>(rng() % (2 * bound + 1)) - bound, static_cast<long>(rng() % bound) + 1); };
        ProjMat m{r(), r(), r(), r()};
        if (!m.det().is_zero()) return m;
    }
}

BTVertex random_vertex(std::mt19937_64& rng, std::uint64_t p) {
    return make_vertex(static_cast<long>(rng() % 7) - 3, q(static_cast<long>(rng() % 61) - 30, static_cast<long>(rng() % 30) + 1), p);
}

std::set<BTVertex> as_set(const std::vector<BTVertex>& v) { return {v.begin(), v.end()}; }

std::pair<End, End> ends(const std::string& a, const std::string& b, std::uint64_t p) {
    return {End::parse(a, p), End::parse(b, p)};
}

}  // namespace

TEST_CASE("matrix parsing") {
    const auto m = ProjMat::parse("0,-1,1,0");
    CHECK(m == mat(0, -1, 1, 0));
    CHECK(ProjMat::parse("1/2,3,-4/6,1").c == q(-2, 3));
    CHECK(m.str() == "0,-1,1,0");
    CHECK_THROWS_AS(ProjMat::parse("1,2,2,4"), Error);
    CHECK_THROWS_AS(ProjMat::parse("1,2,3"), Error);
    CHECK_THROWS_AS(ProjMat::parse("1,x,3,4"), Error);
    CHECK(mat(2, 0, 0, 2).is_scalar());
    CHECK(mat(2, 4, 6, 8).same_class(mat(1, 2, 3, 4)));
}

TEST_CASE("vertices from matrices agree with the lattice oracle") {
    CHECK(vertex_from_matrix(ProjMat::identity(), 5) == BTVertex{0, Rat(0)});
    CHECK(vertex_from_matrix(mat(5, 1, 0, 1), 5) == BTVertex{1, Rat(1)});
    CHECK(vertex_from_matrix(mat(5, 0, 0, 1) * mat(2, 1, 1, 1), 5) == BTVertex{1, Rat(0)});
    std::mt19937_64 rng(11);
    for (int i = 0; i < 400; ++i) {
        const std::uint64_t p = kPrimes[i % 4];
        const ProjMat m = random_matrix(rng);
        const BTVertex v = vertex_from_matrix(m, p);
        CHECK(same_lattice(representative(v, p), m, p));
        CHECK(v.u >= Rat(0));
        CHECK(v.u < rpow(p, v.n));
    }
}

TEST_CASE("distances") {
    CHECK(distance({0, Rat(0)}, {3, Rat(0)}, 5) == 3);
    CHECK(distance({1, Rat(0)}, {1, Rat(1)}, 2) == 2);
    CHECK(distance({0, Rat(0)}, {0, Rat(0)}, 7) == 0);
    std::mt19937_64 rng(12);
    for (int i = 0; i < 400; ++i) {
        const std::uint64_t p = kPrimes[i % 4];
        const BTVertex v = random_vertex(rng, p), w = random_vertex(rng, p);
        CHECK(distance(v, w, p) == lattice_distance(representative(v, p), representative(w, p), p));
        CHECK(distance(v, w, p) == distance(w, v, p));
    }
}

TEST_CASE("the action agrees with the lattice oracle") {
    CHECK(act(mat(1, 1, 0, 1), {0, Rat(0)}, 3) == BTVertex{0, Rat(0)});
    CHECK(act(mat(0, 1, 1, 0), {0, Rat(0)}, 3) == BTVertex{0, Rat(0)});
    for (long n = -3; n <= 3; ++n) CHECK(act(mat(5, 0, 0, 1), {n, Rat(0)}, 5) == BTVertex{n + 1, Rat(0)});
    std::mt19937_64 rng(13);
    for (int i = 0; i < 400; ++i) {
        const std::uint64_t p = kPrimes[i % 4];
        const ProjMat m = random_matrix(rng);
        const BTVertex v = random_vertex(rng, p);
        CHECK(same_lattice(representative(act(m, v, p), p), m * representative(v, p), p));
    }
}

TEST_CASE("neighbours and balls") {
    for (std::uint64_t p : {2, 3, 5}) {
        for (const auto& v : std::vector<BTVertex>{{0, Rat(0)}, make_vertex(2, Rat(7), p), make_vertex(-1, q(1, 3), p)}) {
            const auto nb = neighbors(v, p);
            CHECK(nb.size() == p + 1);
            CHECK(as_set(nb).size() == p + 1);
            for (const auto& w : nb) CHECK(distance(v, w, p) == 1);
        }
        std::uint64_t expected = 1, shell = p + 1;
        for (long r = 0; r <= 4; ++r) {
            const auto ball = ball_window(r, p);
            CHECK(ball.size() == expected);
            CHECK(std::is_sorted(ball.begin(), ball.end()));
            for (const auto& v : ball) CHECK(distance(v, {0, Rat(0)}, p) <= r);
            expected += shell;
            shell *= p;
        }
    }
}

TEST_CASE("fixed vertices agree with the action") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 60; ++i) {
        const std::uint64_t p = kPrimes[i % 4];
        const ProjMat m = random_matrix(rng, 6);
        for (const auto& v : ball_window(2, p)) CHECK(fixes(m, v, p) == (act(m, v, p) == v));
    }
}

TEST_CASE("classification") {
    CHECK(classify(mat(1, 1, 0, 1), 7).kind == ElementKind::Parabolic);
    CHECK(classify(mat(5, 0, 0, 1), 5).kind == ElementKind::Hyperbolic);
    CHECK(classify(mat(3, 0, 0, 3), 5).kind == ElementKind::Identity);
    const auto e3 = classify(mat(0, -1, 1, -1), 7);
    CHECK(e3.kind == ElementKind::Elliptic);
    CHECK(e3.order == 3);
    // The discriminant -3 is 4 modulo 7, hence a square in Q_7.
    CHECK(e3.rational_fixed_points);
    const auto e2 = classify(mat(0, -1, 1, 0), 5);
    CHECK(e2.kind == ElementKind::Elliptic);
    CHECK(e2.order == 2);
    CHECK(e2.rational_fixed_points);
    CHECK_FALSE(classify(mat(0, -1, 1, 0), 7).rational_fixed_points);
    CHECK(classify(mat(0, 1, 3, 0), 3).inverts_edge);
    CHECK(classify(mat(2, 0, 0, 1), 5).kind == ElementKind::NonTorsionUnit);
    CHECK(kind_name(ElementKind::NonTorsionUnit) == "non_torsion_unit");
    CHECK(nlohmann::json(e2).dump() == R"({"class":"elliptic","inverts_edge":false,"order":2,"rational_fixed_points":true})");
}

TEST_CASE("projective orders") {
    CHECK(order_in_pgl2(ProjMat::identity()) == 1u);
    CHECK(order_in_pgl2(mat(0, -1, 1, 0)) == 2u);
    CHECK(order_in_pgl2(mat(0, -1, 1, -1)) == 3u);
    CHECK(order_in_pgl2(mat(1, -1, 1, 1)) == 4u);
    CHECK(order_in_pgl2(mat(1, -1, 1, 0)) == 3u);
    CHECK(order_in_pgl2(mat(1, -1, 1, 2)) == 6u);
    CHECK_FALSE(order_in_pgl2(mat(1, 1, 0, 1)).has_value());
    std::mt19937_64 rng(15);
    for (int i = 0; i < 200; ++i) {
        const ProjMat m = random_matrix(rng, 4);
        const auto n = order_in_pgl2(m);
        unsigned first = 0;
        for (unsigned k = 1; k <= 12 && first == 0; ++k) {
            if (power(m, k).is_scalar()) first = k;
        }
        CHECK(n.value_or(0) == first);
    }
}

TEST_CASE("fixed points") {
    const auto t = fixed_points(mat(1, 1, 0, 1), 5, 4);
    REQUIRE(t.ends.size() == 1);
    CHECK(t.ends[0].is_infinity());
    const auto r = fixed_points(mat(0, -1, 1, 0), 5, 2);
    REQUIRE(r.ends.size() == 2);
    CHECK(r.ends[0].str(5) == "7+O(5^2)");
    CHECK(r.ends[1].str(5) == "18+O(5^2)");
    try {
        fixed_points(mat(0, -1, 1, 0), 7, 4);
        FAIL("expected ExtensionRequired");
    } catch (const Error& e) {
        CHECK(e.code() == "ExtensionRequired");
    }
    const auto x = fixed_points(mat(1, -1, 0, -1), 3, 4);
    REQUIRE(x.ends.size() == 2);
    CHECK(x.ends[0].is_infinity());
    CHECK(x.ends[1] == End::exact(q(1, 2)));
    const auto ex = fixed_points(mat(0, 4, 1, 0), 5, 4);
    CHECK(ex.ends == std::vector<End>{End::exact(Rat(-2)), End::exact(Rat(2))});

    std::mt19937_64 rng(16);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t p = kPrimes[i % 4];
        const ProjMat m = random_matrix(rng, 20);
        if (m.is_scalar()) continue;
        try {
            for (const auto& e : fixed_points(m, p, 12).ends) {
                if (e.kind == End::Kind::Exact) {
                    CHECK((m.c * e.value * e.value + (m.d - m.a) * e.value - m.b).is_zero());
                } else if (e.kind == End::Kind::Approx) {
                    CHECK(e.precision == 12);
                    // f(z) = c (z - z1)(z - z2) with z = z1 to 12 digits.
                    const Rat f = m.c * e.value * e.value + (m.d - m.a) * e.value - m.b;
                    const Rat disc = (m.d - m.a) * (m.d - m.a) + Rat(4) * m.b * m.c;
                    const long gap = vp(disc, p) / 2 - vp(m.c, p);
                    CHECK(vp(f, p) >= vp(m.c, p) + 12 + std::min(gap, 12L));
                }
            }
        } catch (const Error& e) {
            CHECK(e.code() == "ExtensionRequired");
        }
    }
}

TEST_CASE("ends parse and print") {
    CHECK(End::parse("inf", 5).is_infinity());
    CHECK(End::parse("3/2", 5) == End::exact(q(3, 2)));
    const End a = End::parse("7+O(5^2)", 5);
    CHECK(a.kind == End::Kind::Approx);
    CHECK(a.precision == 2);
    CHECK(a.str(5) == "7+O(5^2)");
    CHECK_THROWS_AS(End::parse("7+O(3^2)", 5), Error);
    CHECK_THROWS_AS(End::parse("seven", 5), Error);
}

TEST_CASE("geodesics") {
    const auto g = geodesic(End::exact(Rat(0)), End::infinity(), 3, {-2, 2});
    CHECK(as_set(g.vertices) == std::set<BTVertex>{{-2, Rat(0)}, {-1, Rat(0)}, {0, Rat(0)}, {1, Rat(0)}, {2, Rat(0)}});
    const auto h = geodesic(End::exact(Rat(1)), End::exact(Rat(-1)), 3, {0, 2});
    CHECK(h.vertices == std::vector<BTVertex>{{2, Rat(1)}, {1, Rat(1)}, {0, Rat(0)}, {1, Rat(2)}, {2, Rat(8)}});
    const auto k = geodesic(End::exact(Rat(1)), End::exact(Rat(6)), 5, {0, 2});
    CHECK(k.vertices == std::vector<BTVertex>{{2, Rat(1)}, {1, Rat(1)}, {2, Rat(6)}});
    const auto tr = geodesic(End::parse("7+O(5^2)", 5), End::infinity(), 5, {-1, 4});
    CHECK(tr.truncated);
    CHECK(tr.vertices.front() == BTVertex{2, Rat(7)});
    CHECK_THROWS_AS(geodesic(End::parse("7+O(5^2)", 5), End::exact(Rat(32)), 5, {-1, 4}), Error);

    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const std::uint64_t p = kPrimes[i % 4];
        const End a = End::exact(q(static_cast<long>(rng() % 61) - 30, static_cast<long>(rng() % 20) + 1));
        const End b = i % 5 == 0 ? End::infinity() : End::exact(q(static_cast<long>(rng() % 61) - 30, 1));
        if (a == b) continue;
        const auto geo = geodesic(a, b, p, {-4, 4});
        for (std::size_t j = 1; j < geo.vertices.size(); ++j) {
            CHECK(distance(geo.vertices[j - 1], geo.vertices[j], p) == 1);
        }
        CHECK(as_set(geo.vertices).size() == geo.vertices.size());
        const auto back = geodesic(b, a, p, {-4, 4});
        CHECK(std::equal(geo.vertices.begin(), geo.vertices.end(), back.vertices.rbegin(), back.vertices.rend()));
    }
}

TEST_CASE("geodesic intersections") {
    const auto a = geodesic_intersection(ends("0", "inf", 3), ends("1", "-1", 3), 3, {-4, 4});
    CHECK(a.kind == IntersectionKind::SingleVertex);
    CHECK(a.vertices == std::vector<BTVertex>{{0, Rat(0)}});
    CHECK(nlohmann::json(a)["vertex"] == "(n=0,u=0)");
    const auto b = geodesic_intersection(ends("0", "inf", 5), ends("1", "6", 5), 5, {-4, 4});
    CHECK(b.kind == IntersectionKind::Empty);
    const auto c = geodesic_intersection(ends("0", "inf", 5), ends("1", "inf", 5), 5, {-4, 4});
    CHECK(c.kind == IntersectionKind::Segment);
    CHECK(c.extends_beyond);
    for (const auto& v : c.vertices) CHECK(v.n <= 0);
    CHECK(c.vertices.size() == 5);
}

TEST_CASE("cross ratios measure the overlap of geodesics") {
    const auto a = cross_ratio(End::exact(Rat(0)), End::infinity(), End::exact(Rat(1)), End::exact(Rat(-1)), 5);
    CHECK(a.value == Rat(-1));
    CHECK(a.valuation == 0);
    const auto b = cross_ratio(End::exact(Rat(0)), End::infinity(), End::exact(Rat(1)), End::exact(Rat(6)), 5);
    CHECK(b.value == q(1, 6));
    CHECK(b.valuation == 0);
    const End x = End::exact(q(7, 3)), zero = End::exact(Rat(0)), one = End::exact(Rat(1));
    const auto base = cross_ratio(zero, one, End::infinity(), x, 5).value;
    CHECK(cross_ratio(one, zero, x, End::infinity(), 5).value == base);
    CHECK(cross_ratio(End::infinity(), x, zero, one, 5).value == base);
    CHECK_THROWS_AS(cross_ratio(zero, zero, one, x, 5), Error);

    std::mt19937_64 rng(18);
    int segments = 0;
    for (int i = 0; i < 400; ++i) {
        const std::uint64_t p = kPrimes[i % 4];
        std::vector<End> e;
        for (int k = 0; k < 4; ++k) e.push_back(End::exact(q(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 3))));
        if (e[0] == e[1] || e[2] == e[3] || e[0] == e[2] || e[0] == e[3] || e[1] == e[2] || e[1] == e[3]) continue;
        const auto x = geodesic_intersection({e[0], e[1]}, {e[2], e[3]}, p, {-12, 12});
        const auto cr = cross_ratio(e[0], e[1], e[2], e[3], p);
        if (x.extends_beyond) continue;
        const long overlap = x.kind == IntersectionKind::Segment ? static_cast<long>(x.vertices.size()) - 1 : 0;
        if (overlap > 0) ++segments;
        CHECK(std::abs(cr.valuation) == overlap);
    }
    CHECK(segments > 20);
}

TEST_CASE("mirrors") {
    const auto s = mirror(mat(0, 1, 1, 0), 3, 3);
    std::vector<BTVertex> expected;
    for (const auto& v : geodesic(End::exact(Rat(1)), End::exact(Rat(-1)), 3, {-3, 3}).vertices) {
        if (distance(v, {0, Rat(0)}, 3) <= 3) expected.push_back(v);
    }
    std::sort(expected.begin(), expected.end());
    CHECK(s.vertices == expected);
    CHECK(mirror_from_geodesic(mat(0, 1, 1, 0), 3, 3) == expected);

    std::vector<BTVertex> nonpositive;
    for (const auto& v : ball_window(3, 5)) {
        if (v.n <= 0) nonpositive.push_back(v);
    }
    CHECK(mirror(mat(1, 1, 0, 1), 5, 3).vertices == nonpositive);

    const auto h = mirror(mat(5, 0, 0, 1), 5, 3);
    CHECK(h.vertices.empty());
    CHECK(h.reason == "HyperbolicNoFixedVertex");
    CHECK(mirror(mat(0, 1, 3, 0), 3, 3).reason == "EdgeInversion");
    CHECK_THROWS_AS(mirror_from_geodesic(mat(5, 0, 0, 1), 5, 3), Error);

    CHECK(mirror_tube_radius(mat(1, 0, 0, -1), 2) == 1);
    CHECK(mirror_tube_radius(mat(1, 0, 0, -1), 3) == 0);

    std::mt19937_64 rng(19);
    for (int i = 0; i < 80; ++i) {
        const std::uint64_t p = kPrimes[i % 4];
        const ProjMat m = random_matrix(rng, 5);
        const auto mir = mirror(m, p, 3);
        std::vector<BTVertex> brute;
        for (const auto& v : ball_window(3, p)) {
            if (act(m, v, p) == v) brute.push_back(v);
        }
        CHECK(mir.vertices == brute);
    }
}

TEST_CASE("rho") {
    const BTVertex base{0, Rat(0)};
    CHECK(rho(base, mat(0, 1, 1, 0), 3).str() == ResidueMatrix::make({0, 1, 1, 0}, 3).str());
    CHECK(rho(base, mat(1, 3, 0, 1), 3).is_identity());
    const ResidueMatrix shifted = rho({1, Rat(0)}, mat(1, 3, 0, 1), 3);
    CHECK(shifted == ResidueMatrix::make({1, 1, 0, 1}, 3));
    CHECK_FALSE(shifted.is_identity());
    try {
        rho(base, mat(3, 0, 0, 1), 3);
        FAIL("expected NotAStabilizer");
    } catch (const Error& e) {
        CHECK(e.code() == "NotAStabilizer");
    }
    // Any representative of the vertex gives a conjugate image.
    const ProjMat r = representative({1, Rat(0)}, 3) * mat(2, 1, 1, 1);
    const auto other = rho_with_representative(r, mat(1, 3, 0, 1), 3);
    CHECK_FALSE(other.is_identity());

    for (std::uint64_t p : {3, 5, 7}) {
        const BTVertex v = make_vertex(2, Rat(1), p);
        const ProjMat rep = representative(v, p);
        std::vector<ProjMat> stab;
        for (const auto& g : {mat(1, 1, 0, 1), mat(1, 0, 1, 1), mat(0, 1, 1, 0), mat(2, 0, 0, 1),
                              mat(1, static_cast<long>(p), 0, 1)}) {
            stab.push_back(rep * g * rep.adjugate());
        }
        for (const auto& a : stab) {
            for (const auto& b : stab) CHECK(rho(v, a * b, p) == rho(v, a, p) * rho(v, b, p));
        }
        CHECK(rho(v, stab.back(), p).is_identity());
    }
}

TEST_CASE("pairs of elements") {
    const ProjMat s = mat(0, 1, 1, 0), d = mat(1, 0, 0, -1);
    CHECK(pair_type(s, s, 3, 3).kind == PairKind::Cyclic);
    const auto k = pair_type(s, d, 3, 3);
    CHECK(k.kind == PairKind::KleinFour);
    CHECK(k.group_size == 4);
    CHECK(k.mirrors_intersect == true);
    CHECK(k.common_fixed == std::vector<BTVertex>{{0, Rat(0)}});
    const auto o = pair_type(s, mat(0, 2, 1, 0), 7, 3);
    CHECK(o.kind == PairKind::InfiniteOrOther);
    CHECK(o.group_size == 0);
    CHECK(generated_group({s, d}, 24)->size() == 4);
    CHECK_FALSE(generated_group({mat(1, 1, 0, 1)}, 24).has_value());

    // Torsion pairs with a common fixed-point set generate cyclic groups.
    std::mt19937_64 rng(20);
    const std::vector<ProjMat> torsion{mat(0, -1, 1, 0), mat(0, -1, 1, -1), mat(1, -1, 1, 1), mat(1, -1, 1, 0)};
    for (int i = 0; i < 60; ++i) {
        const std::uint64_t p = std::vector<std::uint64_t>{5, 7}[i % 2];
        ProjMat g = random_matrix(rng, 4);
        const ProjMat a = g * torsion[rng() % 4] * g.adjugate();
        const ProjMat b = i % 3 == 0 ? a * a : g * torsion[rng() % 4] * g.adjugate();
        const auto rep = pair_type(a, b, p, 2);
        if (rep.kind == PairKind::Cyclic) {
            CHECK(rep.same_fixed_points);
            const auto group = generated_group({a, b}, 24);
            REQUIRE(group.has_value());
            unsigned max_order = 1;
            for (const auto& x : *group) max_order = std::max(max_order, order_in_pgl2(x).value_or(0));
            CHECK(max_order == group->size());
        }
    }
}
