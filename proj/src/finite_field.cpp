#include "mumford/finite_field.hpp"

#include <algorithm>

#include "mumford/error.hpp"
#include "mumford/rational.hpp"

namespace mumford {

namespace {

using Poly = std::vector<std::uint64_t>;  // coefficients of t^0 .. t^deg

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo the monic polynomial g over F_p.
Poly poly_mod(Poly f, const Poly& g, std::uint64_t p) {
    trim(f);
    const std::size_t dg = g.size() - 1;
    while (f.size() > dg) {
        const std::uint64_t lead = f.back();
        const std::size_t shift = f.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i) f[shift + i] = (f[shift + i] + (p - lead) * g[i]) % p;
        trim(f);
    }
    return f;
}

// Monic polynomial of degree d whose lower coefficients spell `index` in base p.
Poly monic_from_index(std::uint64_t index, unsigned d, std::uint64_t p) {
    Poly f(d + 1, 0);
    for (unsigned i = 0; i < d; ++i) {
        f[i] = index % p;
        index /= p;
    }
    f[d] = 1;
    return f;
}

std::uint64_t checked_size(std::uint64_t p, unsigned r) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < r; ++i) {
        if (out > (std::uint64_t{1} << 32) / p) throw input_error("field too large");
        out *= p;
    }
    return out;
}

}  // namespace

bool is_irreducible(const std::vector<std::uint64_t>& poly, std::uint64_t p) {
    const std::size_t d = poly.size() - 1;
    for (unsigned k = 1; 2 * k <= d; ++k) {
        const std::uint64_t count = checked_size(p, k);
        for (std::uint64_t i = 0; i < count; ++i) {
            if (poly_mod(poly, monic_from_index(i, k, p), p).empty()) return false;
        }
    }
    return d >= 1;
}

FiniteField::FiniteField(std::uint64_t p, unsigned r) : p_(p), r_(r) {
    if (!is_prime(p)) throw input_error("p=" + std::to_string(p) + " is not prime");
    if (r < 1) throw input_error("r must be at least 1");
    size_ = checked_size(p, r);
    // Enumerate candidates so that (c_{r-1}, ..., c_0) increases; c_0 is the
    // least significant digit of i.
    for (std::uint64_t i = 0; i < size_; ++i) {
        Poly f(r + 1, 0);
        std::uint64_t rest = i;
        for (unsigned j = 0; j < r; ++j) {
            f[j] = rest % p;
            rest /= p;
        }
        f[r] = 1;
        if (is_irreducible(f, p)) {
            modulus_ = std::move(f);
            return;
        }
    }
    throw Error("Internal", "no irreducible polynomial found");
}

std::string FiniteField::modulus_string() const {
    std::string out;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
        const std::uint64_t c = modulus_[i];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        const std::string coeff = (c == 1 && i > 0) ? "" : std::to_string(c);
        if (i == 0) out += coeff;
        else if (i == 1) out += coeff + "t";
        else out += coeff + "t^" + std::to_string(i);
    }
    return out;
}

FiniteField::Element FiniteField::one() const {
    Element e = zero();
    e[0] = 1;
    return e;
}

FiniteField::Element FiniteField::generator() const {
    Element e = zero();
    if (r_ > 1) {
        e[1] = 1;
        return e;
    }
    // For r = 1 the class of t is a constant; use the smallest primitive root.
    for (std::uint64_t g = 1; g < p_; ++g) {
        std::uint64_t x = g, k = 1;
        while (x != 1) {
            x = x * g % p_;
            ++k;
        }
        if (k == p_ - 1) {
            e[0] = g;
            break;
        }
    }
    return e;
}

FiniteField::Element FiniteField::from_index(std::uint64_t index) const {
    Element e = zero();
    for (unsigned i = 0; i < r_; ++i) {
        e[i] = index % p_;
        index /= p_;
    }
    return e;
}

std::uint64_t FiniteField::index(const Element& x) const {
    std::uint64_t out = 0;
    for (unsigned i = r_; i-- > 0;) out = out * p_ + x[i];
    return out;
}

std::vector<FiniteField::Element> FiniteField::elements() const {
    std::vector<Element> out;
    for (std::uint64_t i = 0; i < size_; ++i) out.push_back(from_index(i));
    return out;
}

FiniteField::Element FiniteField::add(const Element& x, const Element& y) const {
    Element out(r_);
    for (unsigned i = 0; i < r_; ++i) out[i] = (x[i] + y[i]) % p_;
    return out;
}

FiniteField::Element FiniteField::neg(const Element& x) const {
    Element out(r_);
    for (unsigned i = 0; i < r_; ++i) out[i] = (p_ - x[i]) % p_;
    return out;
}

FiniteField::Element FiniteField::mul(const Element& x, const Element& y) const {
    Poly prod(2 * r_, 0);
    for (unsigned i = 0; i < r_; ++i) {
        for (unsigned j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    }
    Poly rem = poly_mod(prod, modulus_, p_);
    rem.resize(r_, 0);
    return rem;
}

FiniteField::Element FiniteField::pow(const Element& x, std::uint64_t e) const {
    Element result = one(), base = x;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

bool FiniteField::is_zero(const Element& x) const {
    return std::all_of(x.begin(), x.end(), [](std::uint64_t c) { return c == 0; });
}

BiPoly BiPoly::constant(const FiniteField* f, const FiniteField::Element& c) {
    BiPoly out(f);
    out.add_term({0, 0}, c);
    return out;
}

BiPoly BiPoly::x(const FiniteField* f) {
    BiPoly out(f);
    out.add_term({1, 0}, f->one());
    return out;
}

BiPoly BiPoly::y(const FiniteField* f) {
    BiPoly out(f);
    out.add_term({0, 1}, f->one());
    return out;
}

void BiPoly::add_term(std::pair<std::uint64_t, std::uint64_t> deg, const FiniteField::Element& c) {
    auto it = terms_.find(deg);
    if (it == terms_.end()) {
        if (!f_->is_zero(c)) terms_.emplace(deg, c);
        return;
    }
    it->second = f_->add(it->second, c);
    if (f_->is_zero(it->second)) terms_.erase(it);
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    BiPoly out = *this;
    for (const auto& [deg, c] : o.terms_) out.add_term(deg, c);
    return out;
}

BiPoly BiPoly::operator-(const BiPoly& o) const {
    BiPoly out = *this;
    for (const auto& [deg, c] : o.terms_) out.add_term(deg, f_->neg(c));
    return out;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
    BiPoly out(f_);
    for (const auto& [d1, c1] : terms_) {
        for (const auto& [d2, c2] : o.terms_) out.add_term({d1.first + d2.first, d1.second + d2.second}, f_->mul(c1, c2));
    }
    return out;
}

BiPoly BiPoly::pow(std::uint64_t e) const {
    BiPoly result = constant(f_, f_->one()), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

BiPoly BiPoly::substitute(const FiniteField::Element& a, const FiniteField::Element& b) const {
    const BiPoly xa = x(f_) + constant(f_, a);
    const BiPoly yb = y(f_) + constant(f_, b);
    BiPoly out(f_);
    for (const auto& [deg, c] : terms_) out = out + constant(f_, c) * xa.pow(deg.first) * yb.pow(deg.second);
    return out;
}

BiPoly subrao_polynomial(const FiniteField& field, std::uint64_t q) {
    const BiPoly x = BiPoly::x(&field), y = BiPoly::y(&field);
    return (y.pow(q) - y) * (x.pow(q) - x);
}

bool verify_translation_automorphism(const FiniteField& field, std::uint64_t q, const FiniteField::Element& a,
                                     const FiniteField::Element& b) {
    const BiPoly curve = subrao_polynomial(field, q);
    return curve.substitute(a, b) == curve;
}

}  // namespace mumford
