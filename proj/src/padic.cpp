#include "mumford/padic.hpp"

#include <algorithm>

#include "mumford/error.hpp"

namespace mumford {

namespace {

BigInt mod_pos(const BigInt& x, const BigInt& m) {
    BigInt r = x % m;
    if (r < 0) r += m;
    return r;
}

// Unit part u of x = p^k u (k = vp(x)).
Rat unit_part(const Rat& x, std::uint64_t p) { return x * rpow(p, -vp(x, p)); }

// s with s^2 = u mod p for a unit u that is a quadratic residue (odd p).
BigInt residue_sqrt(const BigInt& u, std::uint64_t p) {
    const BigInt pm(static_cast<unsigned long>(p));
    if (p < 64) {
        for (std::uint64_t s = 1; s < p; ++s) {
            const BigInt sb(static_cast<unsigned long>(s));
            if (mod_pos(sb * sb - u, pm) == 0) return sb;
        }
        throw Error("Internal", "no square root modulo p");
    }
    // Tonelli-Shanks otherwise.
    BigInt q = pm - 1;
    unsigned long e = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++e;
    }
    BigInt z = 2;
    while (mpz_legendre(z.get_mpz_t(), pm.get_mpz_t()) != -1) ++z;
    BigInt m_, c, t, r;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), pm.get_mpz_t());
    mpz_powm(t.get_mpz_t(), u.get_mpz_t(), q.get_mpz_t(), pm.get_mpz_t());
    BigInt exp = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), u.get_mpz_t(), exp.get_mpz_t(), pm.get_mpz_t());
    unsigned long mm = e;
    while (t != 1) {
        unsigned long i = 0;
        BigInt tt = t;
        while (tt != 1) {
            tt = mod_pos(tt * tt, pm);
            ++i;
        }
        BigInt b = c;
        for (unsigned long j = 0; j + i + 1 < mm; ++j) b = mod_pos(b * b, pm);
        mm = i;
        c = mod_pos(b * b, pm);
        t = mod_pos(t * c, pm);
        r = mod_pos(r * b, pm);
    }
    return r;
}

}  // namespace

Rat canonical_residue(const Rat& x, std::uint64_t p, long n) {
    if (x.is_zero()) return Rat(0);
    const long v = vp(x, p);
    if (v >= n) return Rat(0);
    // x = X / (p^k y) with y prime to p.
    const long k = std::max(0L, -v);
    const BigInt pk = ipow(p, static_cast<unsigned long>(k));
    const Rat scaled = x * Rat(pk);  // p-integral
    const BigInt digits = reduce_mod(scaled, p, static_cast<unsigned long>(n + k));
    return Rat(digits, pk);
}

PadicApprox PadicApprox::make(const Rat& value, long precision, std::uint64_t p) {
    return {canonical_residue(value, p, precision), precision};
}

long PadicApprox::valuation(std::uint64_t p) const {
    return value.is_zero() ? precision : std::min(vp(value, p), precision);
}

bool PadicApprox::agree(const PadicApprox& a, const PadicApprox& b, std::uint64_t p) {
    const long n = std::min(a.precision, b.precision);
    return canonical_residue(a.value - b.value, p, n).is_zero();
}

PadicApprox add(const PadicApprox& a, const PadicApprox& b, std::uint64_t p) {
    return PadicApprox::make(a.value + b.value, std::min(a.precision, b.precision), p);
}

PadicApprox sub(const PadicApprox& a, const PadicApprox& b, std::uint64_t p) {
    return PadicApprox::make(a.value - b.value, std::min(a.precision, b.precision), p);
}

PadicApprox mul(const PadicApprox& a, const PadicApprox& b, std::uint64_t p) {
    // (x + O(p^N)) (y + O(p^M)) = xy + O(p^min(N + v(y), M + v(x))).
    const long n = std::min(a.precision + b.valuation(p), b.precision + a.valuation(p));
    return PadicApprox::make(a.value * b.value, n, p);
}

bool is_padic_square(const Rat& x, std::uint64_t p) {
    if (x.is_zero()) return true;
    if (vp(x, p) % 2 != 0) return false;
    const Rat u = unit_part(x, p);
    if (p == 2) return reduce_mod(u, 2, 3) == 1;
    const BigInt r = reduce_mod(u, p, 1);
    const BigInt pm(static_cast<unsigned long>(p));
    return mpz_legendre(r.get_mpz_t(), pm.get_mpz_t()) == 1;
}

std::optional<PadicApprox> padic_sqrt(const Rat& x, std::uint64_t p, long n) {
    if (x.is_zero()) return PadicApprox{Rat(0), n > 0 ? n / 2 : n};
    if (!is_padic_square(x, p)) return std::nullopt;
    const long m = vp(x, p) / 2;
    const Rat u = unit_part(x, p);
    // Lift s with s^2 = u mod p^target (at least one digit so that s is a unit).
    const long target = std::max(n - 2 * m, p == 2 ? 3L : 1L);
    BigInt s;
    long known;  // digits of s determined by s^2 mod p^target
    if (p == 2) {
        const BigInt ut = reduce_mod(u, 2, static_cast<unsigned long>(target));
        s = 1;
        for (long k = 3; k < target; ++k) {
            const BigInt mod = ipow(2, static_cast<unsigned long>(k + 1));
            if (mod_pos(s * s - ut, mod) != 0) s += ipow(2, static_cast<unsigned long>(k - 1));
        }
        known = target - 1;
    } else {
        s = residue_sqrt(reduce_mod(u, p, 1), p);
        long have = 1;
        while (have < target) {
            have = std::min(2 * have, target);
            const BigInt mod = ipow(p, static_cast<unsigned long>(have));
            const BigInt ut = reduce_mod(u, p, static_cast<unsigned long>(have));
            BigInt inv2s;
            const BigInt two_s = mod_pos(2 * s, mod);
            mpz_invert(inv2s.get_mpz_t(), two_s.get_mpz_t(), mod.get_mpz_t());
            s = mod_pos(s - (s * s - ut) * inv2s, mod);
        }
        known = target;
    }
    return PadicApprox::make(Rat(s) * rpow(p, m), m + known, p);
}

std::string format_rat(const Rat& x) {
    return x.is_integer() ? x.num().get_str() : x.str();
}

std::string format_approx(const PadicApprox& a, std::uint64_t p) {
    return format_rat(a.value) + "+O(" + std::to_string(p) + "^" + std::to_string(a.precision) + ")";
}

}  // namespace mumford
