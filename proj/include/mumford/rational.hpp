#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mumford {

using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
    Rat(const BigInt& value) : v_(value) {}  // NOLINT(google-explicit-constructor)
    Rat(const BigInt& num, const BigInt& den);

    /// Parses "a", "-a" or "a/b".
    static Rat parse(std::string_view text);

    BigInt num() const { return v_.get_num(); }
    BigInt den() const { return v_.get_den(); }
    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    /// Lowest-terms "num/den", including "0/1" and "3/1".
    std::string str() const;

    Rat operator-() const { return from_mpq(-v_); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& raw() const { return v_; }
    static Rat from_mpq(const mpq_class& q) { Rat r; r.v_ = q; r.v_.canonicalize(); return r; }

private:
    mpq_class v_;
};

/// Sentinel returned by vp for zero.
inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

long vp(const BigInt& x, std::uint64_t p);
long vp(const Rat& x, std::uint64_t p);

BigInt ipow(std::uint64_t base, unsigned long exponent);
/// p^e as a rational; e may be negative.
Rat rpow(std::uint64_t p, long exponent);

/// Reduces x (with vp(x) >= 0) modulo p^k to an integer in [0, p^k).
BigInt reduce_mod(const Rat& x, std::uint64_t p, unsigned long k);

bool is_prime(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

}  // namespace mumford
