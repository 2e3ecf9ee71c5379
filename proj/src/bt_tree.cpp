#include "mumford/bt_tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "mumford/error.hpp"

namespace mumford {

namespace {

using i128 = __int128;

long min_vp(std::initializer_list<const Rat*> xs, std::uint64_t p) {
    long out = kInfiniteValuation;
    for (const Rat* x : xs) out = std::min(out, vp(*x, p));
    return out;
}

std::int64_t ipow64(std::uint64_t p, long e) {
    std::int64_t out = 1;
    for (long i = 0; i < e; ++i) out *= static_cast<std::int64_t>(p);
    return out;
}

// ---- window traversal ------------------------------------------------------
//
// Vertices are visited as (n, U, k) with u = U / p^k, U prime to p when k > 0.
// The walk starts at (0,0) and never revisits a vertex because it remembers
// the direction it came from.

struct Node {
    long n;
    std::int64_t U;
    long k;
    bool operator==(const Node&) const = default;
};

Node normalize(long n, std::int64_t U, long k, std::uint64_t p) {
    const auto ip = static_cast<std::int64_t>(p);
    if (U == 0) return {n, 0, 0};
    while (k > 0 && U % ip == 0) {
        U /= ip;
        --k;
    }
    return {n, U, k};
}

Node parent_of(const Node& v, std::uint64_t p) {
    const long e = v.n - 1 + v.k;  // residue of U modulo p^e, then divide by p^k
    if (e <= 0) return {v.n - 1, 0, 0};
    const std::int64_t mod = ipow64(p, e);
    std::int64_t r = v.U % mod;
    if (r < 0) r += mod;
    return normalize(v.n - 1, r, v.k, p);
}

Node child_of(const Node& v, std::int64_t j, std::uint64_t p) {
    if (v.n >= 0) return normalize(v.n + 1, v.U + j * ipow64(p, v.n + v.k), v.k, p);
    // u + j p^n with n < 0: bring both over p^max(k, -n).
    const long k = std::max(v.k, -v.n);
    const std::int64_t U = v.U * ipow64(p, k - v.k) + j * ipow64(p, k + v.n);
    return normalize(v.n + 1, U, k, p);
}

void check_window(long radius, std::uint64_t p) {
    if (radius < 0) throw input_error("window radius must be nonnegative");
    // Roughly (p+1) p^(radius-1) vertices; refuse anything that cannot be
    // scanned (this also keeps every center below 2^62).
    long double count = 1;
    for (long i = 0; i < radius; ++i) count *= static_cast<long double>(p);
    if (count > 5e8L) throw input_error("window too large to scan");
}

void walk_ball(long radius, std::uint64_t p, const std::function<void(const Node&, long)>& visit) {
    check_window(radius, p);
    // came_from_child: index of the child we arrived from, or -1 when the
    // vertex was entered from its parent (or is the start).
    const std::function<void(const Node&, long, bool, const Node*)> go = [&](const Node& v, long depth,
                                                                           bool parent_allowed,
                                                                           const Node* skip_child) {
        visit(v, depth);
        if (depth == radius) return;
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(p); ++j) {
            const Node c = child_of(v, j, p);
            if (skip_child && c == *skip_child) continue;
            go(c, depth + 1, false, nullptr);
        }
        if (parent_allowed) go(parent_of(v, p), depth + 1, true, &v);
    };
    go(Node{0, 0, 0}, 0, true, nullptr);
}

BTVertex to_vertex(const Node& v, std::uint64_t p) {
    return {v.n, Rat(BigInt(static_cast<long>(v.U)), ipow(p, static_cast<unsigned long>(v.k)))};
}

// Integer form of the fixed-vertex test for a primitive integral matrix.
class FastTester {
public:
    FastTester(const ProjMat& m, std::uint64_t p, long radius) : p_(p) {
        // Clear denominators and common factors.
        BigInt l = 1;
        for (const Rat* x : {&m.a, &m.b, &m.c, &m.d}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x->den().get_mpz_t());
        std::array<BigInt, 4> e;
        const std::array<const Rat*, 4> src{&m.a, &m.b, &m.c, &m.d};
        BigInt g = 0;
        for (int i = 0; i < 4; ++i) {
            e[i] = src[i]->num() * (l / src[i]->den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e[i].get_mpz_t());
        }
        std::size_t bits = 0;
        for (auto& x : e) {
            x /= g;
            bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
        }
        const BigInt det = e[0] * e[3] - e[1] * e[2];
        const long vdet = vp(det, p);
        odd_ = vdet % 2 != 0;
        kk_ = vdet / 2;
        const std::size_t pbits = mpz_sizeinbase(BigInt(static_cast<unsigned long>(p)).get_mpz_t(), 2);
        usable_ = bits + 2 + 2 * static_cast<std::size_t>(radius) * pbits <= 120;
        if (usable_) {
            for (int i = 0; i < 4; ++i) m_[i] = static_cast<i128>(e[i].get_si());
            vc_ = m_[2] == 0 ? kInfiniteValuation : vp(e[2], p);
        }
    }

    bool usable() const { return usable_; }
    bool none_fixed() const { return odd_; }

    bool fixed(const Node& v) const {
        if (odd_) return false;
        const i128 a = m_[0], b = m_[1], c = m_[2], d = m_[3];
        const i128 U = v.U;
        const i128 pk = ipow64(p_, v.k);
        if (vc_ != kInfiniteValuation && vc_ + v.n < kk_) return false;
        if (!divisible(a * pk - c * U, kk_ + v.k)) return false;
        if (!divisible(c * U + d * pk, kk_ + v.k)) return false;
        return divisible(-c * U * U + (a - d) * U * pk + b * pk * pk, kk_ + 2 * v.k + v.n);
    }

private:
    bool divisible(i128 x, long t) const {
        if (t <= 0 || x == 0) return true;
        const i128 ip = static_cast<i128>(p_);
        for (long i = 0; i < t; ++i) {
            if (x % ip != 0) return false;
            x /= ip;
        }
        return true;
    }

    std::uint64_t p_;
    std::array<i128, 4> m_{};
    long vc_ = kInfiniteValuation;
    long kk_ = 0;
    bool odd_ = false;
    bool usable_ = false;
};

bool proportional(const std::array<Rat, 3>& x, const std::array<Rat, 3>& y) {
    return x[0] * y[1] == x[1] * y[0] && x[0] * y[2] == x[2] * y[0] && x[1] * y[2] == x[2] * y[1];
}

std::array<Rat, 3> fixed_quadratic(const ProjMat& m) { return {m.c, m.d - m.a, -m.b}; }

Rat end_residue(const End& e, std::uint64_t p, long n) { return canonical_residue(e.value, p, n); }

long end_precision(const End& e) { return e.kind == End::Kind::Approx ? e.precision : kInfiniteValuation; }

// vp(e1 - e2) for finite ends; throws when precision cannot separate them.
long separation(const End& e1, const End& e2, std::uint64_t p) {
    const long prec = std::min(end_precision(e1), end_precision(e2));
    const long d = vp(e1.value - e2.value, p);
    if (d >= prec) throw Error("IndistinguishableEnds", "the ends agree to the available precision");
    return d;
}

std::uint64_t inverse_mod(std::uint64_t x, std::uint64_t p) {
    BigInt r;
    const BigInt xb(static_cast<unsigned long>(x)), pb(static_cast<unsigned long>(p));
    mpz_invert(r.get_mpz_t(), xb.get_mpz_t(), pb.get_mpz_t());
    return r.get_ui();
}

}  // namespace

// ---- matrices ----------------------------------------------------------------

ProjMat ProjMat::parse(std::string_view text) {
    std::vector<Rat> parts;
    std::string cur;
    for (char ch : std::string(text) + ",") {
        if (ch == ',') {
            parts.push_back(Rat::parse(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (parts.size() != 4) throw input_error("matrix needs four entries \"a,b,c,d\"");
    ProjMat m{parts[0], parts[1], parts[2], parts[3]};
    if (m.det().is_zero()) throw input_error("matrix is singular");
    return m;
}

ProjMat ProjMat::normalized() const {
    const Rat& lead = !a.is_zero() ? a : (!b.is_zero() ? b : (!c.is_zero() ? c : d));
    return {a / lead, b / lead, c / lead, d / lead};
}

bool ProjMat::same_class(const ProjMat& o) const { return normalized() == o.normalized(); }

std::string ProjMat::str() const {
    return format_rat(a) + "," + format_rat(b) + "," + format_rat(c) + "," + format_rat(d);
}

ProjMat operator*(const ProjMat& x, const ProjMat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

ProjMat power(const ProjMat& m, unsigned k) {
    ProjMat out = ProjMat::identity();
    for (unsigned i = 0; i < k; ++i) out = out * m;
    return out;
}

// ---- vertices ----------------------------------------------------------------

std::string BTVertex::str() const { return "(n=" + std::to_string(n) + ",u=" + format_rat(u) + ")"; }

BTVertex make_vertex(long n, const Rat& u, std::uint64_t p) { return {n, canonical_residue(u, p, n)}; }

BTVertex vertex_from_matrix(const ProjMat& m, std::uint64_t p) {
    if (m.det().is_zero()) throw input_error("matrix is singular");
    // Column operations over Z_p bring m to [[x, y], [0, delta]] where delta is
    // the bottom entry of smallest valuation.
    const bool first = vp(m.c, p) <= vp(m.d, p);
    const Rat& delta = first ? m.c : m.d;
    const Rat& top = first ? m.a : m.b;
    const long n = vp(m.det(), p) - 2 * vp(delta, p);
    return make_vertex(n, top / delta, p);
}

ProjMat representative(const BTVertex& v, std::uint64_t p) { return {rpow(p, v.n), v.u, Rat(0), Rat(1)}; }

long distance(const BTVertex& v, const BTVertex& w, std::uint64_t p) {
    const long m = std::min({v.n, w.n, vp(v.u - w.u, p)});
    return (v.n - m) + (w.n - m);
}

BTVertex act(const ProjMat& m, const BTVertex& v, std::uint64_t p) {
    return vertex_from_matrix(m * representative(v, p), p);
}

std::vector<BTVertex> neighbors(const BTVertex& v, std::uint64_t p) {
    std::vector<BTVertex> out{make_vertex(v.n - 1, v.u, p)};
    for (std::uint64_t j = 0; j < p; ++j) {
        out.push_back(make_vertex(v.n + 1, v.u + Rat(BigInt(static_cast<unsigned long>(j))) * rpow(p, v.n), p));
    }
    return out;
}

std::vector<BTVertex> ball_window(long radius, std::uint64_t p) {
    std::vector<BTVertex> out;
    walk_ball(radius, p, [&](const Node& v, long) { out.push_back(to_vertex(v, p)); });
    std::sort(out.begin(), out.end());
    return out;
}

bool fixes(const ProjMat& m, const BTVertex& v, std::uint64_t p) {
    const long vdet = vp(m.det(), p);
    if (vdet % 2 != 0) return false;
    const long k = vdet / 2;
    const Rat& u = v.u;
    const Rat pn = rpow(p, v.n);
    const Rat e11 = m.a - m.c * u;
    const Rat e12 = (-m.c * u * u + (m.a - m.d) * u + m.b) / pn;
    const Rat e21 = m.c * pn;
    const Rat e22 = m.c * u + m.d;
    return min_vp({&e11, &e12, &e21, &e22}, p) >= k;
}

// ---- classification ------------------------------------------------------------

std::string kind_name(ElementKind k) {
    switch (k) {
        case ElementKind::Identity: return "identity";
        case ElementKind::Hyperbolic: return "hyperbolic";
        case ElementKind::Parabolic: return "parabolic";
        case ElementKind::Elliptic: return "elliptic";
        case ElementKind::NonTorsionUnit: return "non_torsion_unit";
    }
    return "";
}

std::optional<unsigned> order_in_pgl2(const ProjMat& m) {
    for (unsigned n : {1u, 2u, 3u, 4u, 6u}) {
        if (power(m, n).is_scalar()) return n;
    }
    return std::nullopt;
}

ElementClass classify(const ProjMat& m, std::uint64_t p) {
    ElementClass out;
    if (m.is_scalar()) {
        out.kind = ElementKind::Identity;
        out.order = 1;
        return out;
    }
    const Rat tr = m.trace(), det = m.det();
    const Rat disc = tr * tr - Rat(4) * det;
    if (disc.is_zero()) {
        out.kind = ElementKind::Parabolic;
        return out;
    }
    const long vtr = vp(tr, p), vdet = vp(det, p);
    // Newton polygon of t^2 - tr t + det: distinct slopes iff 2 vp(tr) < vp(det).
    if (vtr != kInfiniteValuation && 2 * vtr < vdet) {
        out.kind = ElementKind::Hyperbolic;
        return out;
    }
    if (auto n = order_in_pgl2(m)) {
        out.kind = ElementKind::Elliptic;
        out.order = *n;
        out.rational_fixed_points = is_padic_square(disc, p);
        out.inverts_edge = vdet % 2 != 0;
        return out;
    }
    out.kind = ElementKind::NonTorsionUnit;
    return out;
}

// ---- ends and fixed points -------------------------------------------------------

End End::parse(std::string_view text, std::uint64_t p) {
    std::string s(text);
    std::erase(s, ' ');
    if (s == "inf" || s == "infinity" || s == "oo") return infinity();
    const auto plus = s.find("+O(");
    if (plus == std::string::npos) return exact(Rat::parse(s));
    const auto caret = s.find('^', plus);
    if (caret == std::string::npos || s.back() != ')') throw input_error("bad p-adic end '" + s + "'");
    const std::string prime = s.substr(plus + 3, caret - plus - 3);
    const std::string prec = s.substr(caret + 1, s.size() - caret - 2);
    long pr = 0, pn = 0;
    try {
        pr = std::stol(prime);
        pn = std::stol(prec);
    } catch (const std::exception&) {
        throw input_error("bad p-adic end '" + s + "'");
    }
    if (pr != static_cast<long>(p)) throw input_error("end '" + s + "' is written for a different prime");
    return approx(PadicApprox::make(Rat::parse(s.substr(0, plus)), pn, p));
}

std::string End::str(std::uint64_t p) const {
    switch (kind) {
        case Kind::Infinity: return "inf";
        case Kind::Exact: return format_rat(value);
        case Kind::Approx: return format_approx({value, precision}, p);
    }
    return "";
}

FixedPoints fixed_points(const ProjMat& m, std::uint64_t p, long precision) {
    if (m.is_scalar()) throw Error("ScalarMatrix", "the identity fixes every point");
    FixedPoints out;
    // Fixed points are the roots of c z^2 + (d - a) z - b on P^1.
    const Rat& a = m.a;
    const Rat& b = m.b;
    const Rat& c = m.c;
    const Rat& d = m.d;
    out.discriminant = (d - a) * (d - a) + Rat(4) * b * c;
    if (c.is_zero()) {
        out.ends.push_back(End::infinity());
        if (a != d) out.ends.push_back(End::exact(b / (d - a)));
        return out;
    }
    const Rat two_c = Rat(2) * c;
    if (out.discriminant.is_zero()) {
        out.ends.push_back(End::exact((a - d) / two_c));
        return out;
    }
    // Exact roots when the discriminant is a square in Q.
    if (out.discriminant.sign() > 0) {
        BigInt rn, rd;
        const BigInt num = out.discriminant.num(), den = out.discriminant.den();
        if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
            mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
            const Rat s(rn, rd);
            out.ends.push_back(End::exact((a - d - s) / two_c));
            out.ends.push_back(End::exact((a - d + s) / two_c));
            std::sort(out.ends.begin(), out.ends.end(),
                      [](const End& x, const End& y) { return x.value < y.value; });
            return out;
        }
    }
    if (!is_padic_square(out.discriminant, p)) {
        throw Error("ExtensionRequired", "the fixed points lie in a quadratic extension of Q_" + std::to_string(p));
    }
    // z = ((a - d) +- s) / 2c loses vp(2c) digits of s.
    const long shift = vp(two_c, p);
    // padic_sqrt(x, n) determines n - vp(x)/2 digits (one fewer at p = 2).
    const long half = vp(out.discriminant, p) / 2;
    const auto s = padic_sqrt(out.discriminant, p, precision + shift + half + (p == 2 ? 1 : 0));
    out.sqrt_discriminant = s;
    for (int sign : {-1, 1}) {
        const Rat z = (a - d + Rat(sign) * s->value) / two_c;
        out.ends.push_back(End::approx(PadicApprox::make(z, precision, p)));
    }
    std::sort(out.ends.begin(), out.ends.end(), [](const End& x, const End& y) { return x.value < y.value; });
    return out;
}

// ---- geodesics ---------------------------------------------------------------------

Geodesic geodesic(const End& e1, const End& e2, std::uint64_t p, const LevelWindow& window) {
    Geodesic out;
    if (e1.is_infinity() && e2.is_infinity()) {
        throw Error("IndistinguishableEnds", "both ends are infinity");
    }
    if (e1.is_infinity()) {
        out = geodesic(e2, e1, p, window);
        std::reverse(out.vertices.begin(), out.vertices.end());
        return out;
    }
    const long prec1 = end_precision(e1);
    if (e2.is_infinity()) {
        const long top = std::min(window.hi, prec1);
        out.truncated = window.hi > prec1;
        for (long n = top; n >= window.lo; --n) out.vertices.push_back({n, end_residue(e1, p, n)});
        return out;
    }
    const long prec2 = end_precision(e2);
    const long m = separation(e1, e2, p);
    out.truncated = window.hi > prec1 || window.hi > prec2;
    for (long n = std::min(window.hi, prec1); n >= std::max(window.lo, m + 1); --n) {
        out.vertices.push_back({n, end_residue(e1, p, n)});
    }
    if (m >= window.lo && m <= window.hi) out.vertices.push_back({m, end_residue(e1, p, m)});
    for (long n = std::max(window.lo, m + 1); n <= std::min(window.hi, prec2); ++n) {
        out.vertices.push_back({n, end_residue(e2, p, n)});
    }
    return out;
}

std::string kind_name(IntersectionKind k) {
    switch (k) {
        case IntersectionKind::Empty: return "empty";
        case IntersectionKind::SingleVertex: return "single_vertex";
        case IntersectionKind::Segment: return "segment";
    }
    return "";
}

Intersection geodesic_intersection(const std::pair<End, End>& g1, const std::pair<End, End>& g2, std::uint64_t p,
                                   const LevelWindow& window) {
    // Every branching of the two geodesics happens at a level vp(x - y) for
    // two finite ends; widening the window past all of them makes the shape
    // of the shared part visible.
    std::vector<const End*> finite;
    for (const End* e : {&g1.first, &g1.second, &g2.first, &g2.second}) {
        if (!e->is_infinity()) finite.push_back(e);
    }
    long lo = window.lo, hi = window.hi;
    for (std::size_t i = 0; i < finite.size(); ++i) {
        for (std::size_t j = i + 1; j < finite.size(); ++j) {
            const long prec = std::min(end_precision(*finite[i]), end_precision(*finite[j]));
            const long d = std::min(vp(finite[i]->value - finite[j]->value, p), prec);
            if (d == kInfiniteValuation) continue;
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
    }
    const LevelWindow wide{lo - 2, hi + 2};
    const Geodesic a = geodesic(g1.first, g1.second, p, wide);
    const Geodesic b = geodesic(g2.first, g2.second, p, wide);
    const std::set<BTVertex> in_b(b.vertices.begin(), b.vertices.end());
    std::vector<BTVertex> shared;
    for (const auto& v : a.vertices) {
        if (in_b.contains(v)) shared.push_back(v);
    }
    for (std::size_t i = 1; i < shared.size(); ++i) {
        if (distance(shared[i - 1], shared[i], p) != 1) {
            throw Error("Internal", "geodesic intersection is not a path");
        }
    }
    Intersection out;
    out.kind = shared.empty() ? IntersectionKind::Empty
                              : (shared.size() == 1 ? IntersectionKind::SingleVertex : IntersectionKind::Segment);
    for (const auto& v : shared) {
        if (v.n >= window.lo && v.n <= window.hi) out.vertices.push_back(v);
        else out.extends_beyond = true;
    }
    if (!shared.empty() && (a.truncated || b.truncated)) out.extends_beyond = true;
    return out;
}

CrossRatio cross_ratio(const End& p1, const End& p2, const End& q1, const End& q2, std::uint64_t p) {
    const std::array<const End*, 4> pts{&p1, &p2, &q1, &q2};
    for (const End* e : pts) {
        if (e->kind == End::Kind::Approx) throw input_error("cross_ratio needs exact ends");
    }
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (*pts[i] == *pts[j]) throw Error("CoincidentPoints", "cross_ratio needs four distinct points");
        }
    }
    const auto factor = [](const End& x, const End& y) {
        return (x.is_infinity() || y.is_infinity()) ? Rat(1) : x.value - y.value;
    };
    CrossRatio out;
    out.value = (factor(p1, q1) * factor(p2, q2)) / (factor(p1, q2) * factor(p2, q1));
    out.valuation = vp(out.value, p);
    return out;
}

// ---- mirrors -------------------------------------------------------------------------

Mirror mirror(const ProjMat& m, std::uint64_t p, long radius) {
    Mirror out;
    const ElementClass cls = classify(m, p);
    if (cls.kind == ElementKind::Hyperbolic) {
        check_window(radius, p);
        out.reason = "HyperbolicNoFixedVertex";
        return out;
    }
    if (cls.inverts_edge) out.reason = "EdgeInversion";
    const FastTester fast(m, p, radius);
    const auto record = [&](const Node& v, long depth) {
        out.vertices.push_back(to_vertex(v, p));
        if (depth == radius) out.truncated = true;
    };
    if (fast.none_fixed()) {
        check_window(radius, p);
    } else if (fast.usable()) {
        walk_ball(radius, p, [&](const Node& v, long depth) {
            if (fast.fixed(v)) record(v, depth);
        });
    } else {
        walk_ball(radius, p, [&](const Node& v, long depth) {
            if (fixes(m, to_vertex(v, p), p)) record(v, depth);
        });
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    return out;
}

long mirror_tube_radius(const ProjMat& m, std::uint64_t p) {
    const Rat tr = m.trace(), det = m.det();
    const Rat disc = tr * tr - Rat(4) * det;
    // (vp(disc) - vp(det)) / 2 = vp(lambda1/lambda2 - 1).
    return (vp(disc, p) - vp(det, p)) / 2;
}

std::vector<BTVertex> mirror_from_geodesic(const ProjMat& m, std::uint64_t p, long radius) {
    const ElementClass cls = classify(m, p);
    if (cls.kind == ElementKind::Identity) return ball_window(radius, p);
    if (cls.kind != ElementKind::Elliptic) {
        throw Error("NotEllipticOrParabolic", "the mirror is a geodesic only for elliptic elements");
    }
    if (!cls.rational_fixed_points) {
        throw Error("ExtensionRequired", "the fixed points lie in a quadratic extension of Q_" + std::to_string(p));
    }
    const long t = mirror_tube_radius(m, p);
    const long reach = radius + t;
    const FixedPoints fp = fixed_points(m, p, reach + 1);
    const Geodesic axis = geodesic(fp.ends[0], fp.ends[1], p, {-reach, reach});
    const BTVertex base{0, Rat(0)};
    std::set<BTVertex> out;
    std::set<BTVertex> frontier(axis.vertices.begin(), axis.vertices.end());
    std::set<BTVertex> seen = frontier;
    for (long step = 0; step <= t; ++step) {
        std::set<BTVertex> next;
        for (const auto& v : frontier) {
            if (distance(v, base, p) <= radius) out.insert(v);
            if (step == t) continue;
            for (const auto& w : neighbors(v, p)) {
                if (seen.insert(w).second) next.insert(w);
            }
        }
        frontier = std::move(next);
    }
    return {out.begin(), out.end()};
}

// ---- the map rho --------------------------------------------------------------------

ResidueMatrix ResidueMatrix::make(std::array<std::uint64_t, 4> entries, std::uint64_t p) {
    ResidueMatrix out;
    out.p = p;
    for (auto& x : entries) x %= p;
    std::uint64_t lead = 0;
    for (auto x : entries) {
        if (x != 0) {
            lead = x;
            break;
        }
    }
    if (lead == 0) throw Error("Internal", "zero residue matrix");
    const std::uint64_t inv = inverse_mod(lead, p);
    for (int i = 0; i < 4; ++i) out.e[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(entries[i]) * inv) % p);
    return out;
}

std::string ResidueMatrix::str() const {
    return std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2]) + "," + std::to_string(e[3]);
}

ResidueMatrix operator*(const ResidueMatrix& x, const ResidueMatrix& y) {
    const auto mm = [&](std::uint64_t s, std::uint64_t t) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(s) * t) % x.p);
    };
    return ResidueMatrix::make({(mm(x.e[0], y.e[0]) + mm(x.e[1], y.e[2])) % x.p,
                                (mm(x.e[0], y.e[1]) + mm(x.e[1], y.e[3])) % x.p,
                                (mm(x.e[2], y.e[0]) + mm(x.e[3], y.e[2])) % x.p,
                                (mm(x.e[2], y.e[1]) + mm(x.e[3], y.e[3])) % x.p},
                               x.p);
}

ResidueMatrix rho_with_representative(const ProjMat& r, const ProjMat& m, std::uint64_t p) {
    if (!fixes(m, vertex_from_matrix(r, p), p)) {
        throw Error("NotAStabilizer", "the element does not fix the vertex");
    }
    const ProjMat x = r.adjugate() * m * r;
    const long k = min_vp({&x.a, &x.b, &x.c, &x.d}, p);
    const Rat scale = rpow(p, -k);
    std::array<std::uint64_t, 4> e{};
    const std::array<const Rat*, 4> src{&x.a, &x.b, &x.c, &x.d};
    for (int i = 0; i < 4; ++i) e[i] = reduce_mod(*src[i] * scale, p, 1).get_ui();
    return ResidueMatrix::make(e, p);
}

ResidueMatrix rho(const BTVertex& v, const ProjMat& m, std::uint64_t p) {
    return rho_with_representative(representative(v, p), m, p);
}

// ---- pairs --------------------------------------------------------------------------

std::string kind_name(PairKind k) {
    switch (k) {
        case PairKind::Cyclic: return "cyclic";
        case PairKind::KleinFour: return "klein_four";
        case PairKind::InfiniteOrOther: return "infinite_or_other";
    }
    return "";
}

std::optional<std::vector<ProjMat>> generated_group(const std::vector<ProjMat>& gens, std::size_t bound) {
    std::vector<ProjMat> elements{ProjMat::identity()};
    for (std::size_t head = 0; head < elements.size(); ++head) {
        for (const auto& g : gens) {
            const ProjMat x = (elements[head] * g).normalized();
            const bool known = std::any_of(elements.begin(), elements.end(), [&](const ProjMat& y) { return y == x; });
            if (known) continue;
            elements.push_back(x);
            if (elements.size() > bound) return std::nullopt;
        }
    }
    return elements;
}

PairReport pair_type(const ProjMat& m1, const ProjMat& m2, std::uint64_t p, long radius) {
    PairReport out;
    out.order1 = order_in_pgl2(m1);
    out.order2 = order_in_pgl2(m2);
    out.product_order = order_in_pgl2(m1 * m2);
    const auto q1 = fixed_quadratic(m1), q2 = fixed_quadratic(m2);
    const bool zero1 = m1.is_scalar(), zero2 = m2.is_scalar();
    out.same_fixed_points = zero1 || zero2 || proportional(q1, q2);
    if (out.order1 && out.order2) {
        if (auto group = generated_group({m1, m2}, 24)) out.group_size = group->size();
        if (out.same_fixed_points) {
            out.kind = PairKind::Cyclic;
        } else if (*out.order1 == 2 && *out.order2 == 2 && out.product_order == 2u) {
            out.kind = PairKind::KleinFour;
        }
    }
    const Mirror a = mirror(m1, p, radius);
    const Mirror b = mirror(m2, p, radius);
    if (a.reason != "HyperbolicNoFixedVertex" && b.reason != "HyperbolicNoFixedVertex") {
        std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                              std::back_inserter(out.common_fixed));
        out.mirrors_intersect = !out.common_fixed.empty();
    }
    return out;
}

void to_json(nlohmann::json& j, const ElementClass& c) {
    j = {{"class", kind_name(c.kind)}};
    if (c.kind == ElementKind::Elliptic || c.kind == ElementKind::Identity) j["order"] = c.order;
    if (c.kind == ElementKind::Elliptic) {
        j["rational_fixed_points"] = c.rational_fixed_points;
        j["inverts_edge"] = c.inverts_edge;
    }
}

void to_json(nlohmann::json& j, const Intersection& x) {
    j = {{"kind", kind_name(x.kind)}, {"extends_beyond", x.extends_beyond}};
    std::vector<std::string> vs;
    for (const auto& v : x.vertices) vs.push_back(v.str());
    if (x.kind == IntersectionKind::SingleVertex && vs.size() == 1) j["vertex"] = vs[0];
    j["vertices"] = vs;
}

}  // namespace mumford
