#pragma once

// The Bruhat-Tits tree of Q_p in the ball model: the vertex (n, u) is the
// closed ball u + p^n Z_p. PGL2(Q) acts through rational matrices; all
// computations are exact, and only ends may carry finite p-adic precision.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mumford/padic.hpp"
#include "mumford/rational.hpp"

namespace mumford {

/// A 2x2 rational matrix with nonzero determinant, up to scalars.
struct ProjMat {
    Rat a{1}, b{0}, c{0}, d{1};

    /// Row-major "a,b,c,d"; throws InvalidInput on bad syntax or det = 0.
    static ProjMat parse(std::string_view text);
    static ProjMat identity() { return {}; }

    Rat det() const { return a * d - b * c; }
    Rat trace() const { return a + d; }
    bool is_scalar() const { return b.is_zero() && c.is_zero() && a == d; }
    /// Adjugate, which is the inverse up to the scalar det.
    ProjMat adjugate() const { return {d, -b, -c, a}; }
    /// Scaled so that the first nonzero entry is 1.
    ProjMat normalized() const;
    /// Equality in PGL2.
    bool same_class(const ProjMat& o) const;
    std::string str() const;

    bool operator==(const ProjMat&) const = default;
};

ProjMat operator*(const ProjMat& x, const ProjMat& y);
ProjMat power(const ProjMat& m, unsigned k);

struct BTVertex {
    long n = 0;
    Rat u;  // canonical residue modulo p^n

    /// "(n=1,u=1)"
    std::string str() const;
    bool operator==(const BTVertex&) const = default;
    auto operator<=>(const BTVertex& o) const {
        if (n != o.n) return n <=> o.n;
        return u <=> o.u;
    }
};

BTVertex make_vertex(long n, const Rat& u, std::uint64_t p);
/// Class of the lattice spanned by the columns of m.
BTVertex vertex_from_matrix(const ProjMat& m, std::uint64_t p);
/// [[p^n, u], [0, 1]]
ProjMat representative(const BTVertex& v, std::uint64_t p);
long distance(const BTVertex& v, const BTVertex& w, std::uint64_t p);
BTVertex act(const ProjMat& m, const BTVertex& v, std::uint64_t p);
/// The parent (n-1, u) followed by the p children (n+1, u + j p^n).
std::vector<BTVertex> neighbors(const BTVertex& v, std::uint64_t p);
/// All vertices within distance radius of (0,0), sorted.
std::vector<BTVertex> ball_window(long radius, std::uint64_t p);
/// Whether m fixes v, by the integrality of R^-1 m R.
bool fixes(const ProjMat& m, const BTVertex& v, std::uint64_t p);

enum class ElementKind { Identity, Hyperbolic, Parabolic, Elliptic, NonTorsionUnit };

struct ElementClass {
    ElementKind kind = ElementKind::Identity;
    unsigned order = 0;  // projective order; 0 when infinite
    bool rational_fixed_points = false;  // elliptic only
    bool inverts_edge = false;  // finite order with vp(det) odd
};

std::string kind_name(ElementKind k);
/// Smallest n in {1,2,3,4,6} with m^n scalar.
std::optional<unsigned> order_in_pgl2(const ProjMat& m);
ElementClass classify(const ProjMat& m, std::uint64_t p);

/// A point of P^1(Q_p).
struct End {
    enum class Kind { Infinity, Exact, Approx };
    Kind kind = Kind::Infinity;
    Rat value;
    long precision = kInfiniteValuation;  // Approx only

    static End infinity() { return {}; }
    static End exact(const Rat& x) { return {Kind::Exact, x, kInfiniteValuation}; }
    static End approx(const PadicApprox& x) { return {Kind::Approx, x.value, x.precision}; }
    /// "inf", "3/2", "-1" or "7+O(5^2)" (the prime must equal p).
    static End parse(std::string_view text, std::uint64_t p);

    std::string str(std::uint64_t p) const;
    bool is_infinity() const { return kind == Kind::Infinity; }
    bool operator==(const End&) const = default;
};

struct FixedPoints {
    std::vector<End> ends;
    Rat discriminant;
    std::optional<PadicApprox> sqrt_discriminant;  // set when a root was lifted
};

/// Fixed points on P^1(Q_p). Throws ExtensionRequired when the discriminant
/// is not a square in Q_p and ScalarMatrix for the identity.
FixedPoints fixed_points(const ProjMat& m, std::uint64_t p, long precision);

struct LevelWindow {
    long lo = -4;
    long hi = 4;
};

struct Geodesic {
    std::vector<BTVertex> vertices;  // ordered from e1 to e2
    bool truncated = false;  // an approximate end ran out of digits
};

/// Throws IndistinguishableEnds when the ends agree to their precision.
Geodesic geodesic(const End& e1, const End& e2, std::uint64_t p, const LevelWindow& window);

enum class IntersectionKind { Empty, SingleVertex, Segment };

struct Intersection {
    IntersectionKind kind = IntersectionKind::Empty;
    std::vector<BTVertex> vertices;  // inside the window, in g1 order
    bool extends_beyond = false;  // the shared part continues past the window
};

std::string kind_name(IntersectionKind k);
Intersection geodesic_intersection(const std::pair<End, End>& g1, const std::pair<End, End>& g2, std::uint64_t p,
                                   const LevelWindow& window);

struct CrossRatio {
    Rat value;
    long valuation = 0;
};

/// ((p1-q1)(p2-q2)) / ((p1-q2)(p2-q1)) for exact ends; factors containing
/// infinity are dropped. Throws CoincidentPoints.
CrossRatio cross_ratio(const End& p1, const End& p2, const End& q1, const End& q2, std::uint64_t p);

struct Mirror {
    std::vector<BTVertex> vertices;  // sorted
    std::string reason;  // empty, HyperbolicNoFixedVertex or EdgeInversion
    bool truncated = false;  // the fixed set reaches the window boundary
};

/// Brute-force scan of the ball of the given radius around (0,0).
Mirror mirror(const ProjMat& m, std::uint64_t p, long radius);
/// Width of the fixed tube around the axis of an elliptic element with
/// rational fixed points: 0 unless the order is divisible by p.
long mirror_tube_radius(const ProjMat& m, std::uint64_t p);
/// Vertices within the ball of the given radius that lie within
/// mirror_tube_radius of the geodesic joining the fixed points. Throws
/// NotEllipticOrParabolic or ExtensionRequired.
std::vector<BTVertex> mirror_from_geodesic(const ProjMat& m, std::uint64_t p, long radius);

/// A matrix over F_p up to scalars, normalized so that its first nonzero
/// entry is 1.
struct ResidueMatrix {
    std::array<std::uint64_t, 4> e{1, 0, 0, 1};
    std::uint64_t p = 2;

    static ResidueMatrix make(std::array<std::uint64_t, 4> entries, std::uint64_t p);
    bool is_identity() const { return e == std::array<std::uint64_t, 4>{1, 0, 0, 1}; }
    std::string str() const;
    bool operator==(const ResidueMatrix&) const = default;
};

ResidueMatrix operator*(const ResidueMatrix& x, const ResidueMatrix& y);

/// Reduction of R^-1 m R for the canonical representative R of v. Throws
/// NotAStabilizer when m does not fix v.
ResidueMatrix rho(const BTVertex& v, const ProjMat& m, std::uint64_t p);
/// The same with an arbitrary representative r of the vertex.
ResidueMatrix rho_with_representative(const ProjMat& r, const ProjMat& m, std::uint64_t p);

enum class PairKind { Cyclic, KleinFour, InfiniteOrOther };

struct PairReport {
    PairKind kind = PairKind::InfiniteOrOther;
    bool same_fixed_points = false;
    std::optional<unsigned> order1, order2, product_order;
    std::size_t group_size = 0;  // 0 when the closure exceeded the bound
    std::optional<bool> mirrors_intersect;  // unset when a mirror is empty by class
    std::vector<BTVertex> common_fixed;
};

std::string kind_name(PairKind k);
PairReport pair_type(const ProjMat& m1, const ProjMat& m2, std::uint64_t p, long radius);

/// Projective classes in the group generated by the given elements, or
/// nullopt when there are more than `bound`.
std::optional<std::vector<ProjMat>> generated_group(const std::vector<ProjMat>& gens, std::size_t bound);

void to_json(nlohmann::json& j, const ElementClass& c);
void to_json(nlohmann::json& j, const Intersection& x);

}  // namespace mumford
