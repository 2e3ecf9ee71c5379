#pragma once

// F_q = F_p[t] / (f) in the polynomial basis, and polynomials in x, y over
// it, enough to check translation automorphisms of curves symbolically.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mumford {

class FiniteField {
public:
    /// Coefficients c_0 .. c_{r-1} of t^0 .. t^{r-1}.
    using Element = std::vector<std::uint64_t>;

    /// Uses the smallest monic irreducible polynomial of degree r, comparing
    /// the coefficient tuples (c_{r-1}, ..., c_0) lexicographically.
    FiniteField(std::uint64_t p, unsigned r);

    std::uint64_t p() const { return p_; }
    unsigned degree() const { return r_; }
    std::uint64_t size() const { return size_; }
    /// Monic modulus f, coefficients of t^0 .. t^r.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    /// "t^2+t+1"
    std::string modulus_string() const;

    Element zero() const { return Element(r_, 0); }
    Element one() const;
    /// The class of t (the generator of the polynomial basis).
    Element generator() const;
    Element from_index(std::uint64_t index) const;
    std::uint64_t index(const Element& x) const;
    std::vector<Element> elements() const;

    Element add(const Element& x, const Element& y) const;
    Element neg(const Element& x) const;
    Element sub(const Element& x, const Element& y) const { return add(x, neg(y)); }
    Element mul(const Element& x, const Element& y) const;
    Element pow(const Element& x, std::uint64_t e) const;
    bool is_zero(const Element& x) const;

private:
    std::uint64_t p_;
    unsigned r_;
    std::uint64_t size_;
    std::vector<std::uint64_t> modulus_;
};

/// True iff the monic polynomial (coefficients of t^0 .. t^deg) is
/// irreducible over F_p.
bool is_irreducible(const std::vector<std::uint64_t>& poly, std::uint64_t p);

/// Polynomials in x and y over a finite field, keyed by (deg_x, deg_y).
class BiPoly {
public:
    explicit BiPoly(const FiniteField* field) : f_(field) {}

    static BiPoly constant(const FiniteField* f, const FiniteField::Element& c);
    static BiPoly x(const FiniteField* f);
    static BiPoly y(const FiniteField* f);

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly pow(std::uint64_t e) const;

    /// P(x + a, y + b)
    BiPoly substitute(const FiniteField::Element& a, const FiniteField::Element& b) const;

    const std::map<std::pair<std::uint64_t, std::uint64_t>, FiniteField::Element>& terms() const { return terms_; }
    bool operator==(const BiPoly& o) const { return terms_ == o.terms_; }

private:
    void add_term(std::pair<std::uint64_t, std::uint64_t> deg, const FiniteField::Element& c);

    const FiniteField* f_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, FiniteField::Element> terms_;
};

/// (y^q - y)(x^q - x) over the given field; the constant c of the curve
/// equation cancels from both sides of the automorphism check.
BiPoly subrao_polynomial(const FiniteField& field, std::uint64_t q);

/// Whether (x, y) -> (x + a, y + b) preserves (y^q - y)(x^q - x), decided by
/// comparing the expanded polynomials. a, b may lie in a larger field than
/// F_q, in which case the answer can be false.
bool verify_translation_automorphism(const FiniteField& field, std::uint64_t q, const FiniteField::Element& a,
                                     const FiniteField::Element& b);

}  // namespace mumford
