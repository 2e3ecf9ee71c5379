#include "mumford/rational.hpp"

#include "mumford/error.hpp"

namespace mumford {

Rat::Rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error("ZeroDenominator", "rational with zero denominator", ErrorKind::Input);
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw Error("DivisionByZero", "division by zero");
    v_ /= o.v_;
    return *this;
}

Rat Rat::parse(std::string_view text) {
    std::string s(text);
    const auto strip = [](std::string t) {
        const auto b = t.find_first_not_of(" \t");
        const auto e = t.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    s = strip(s);
    const auto slash = s.find('/');
    const auto parse_int = [&](const std::string& part) {
        const std::string t = strip(part);
        BigInt out;
        bool ok = !t.empty();
        for (std::size_t i = 0; ok && i < t.size(); ++i) {
            const char ch = t[i];
            ok = (ch >= '0' && ch <= '9') || (i == 0 && (ch == '-' || ch == '+') && t.size() > 1);
        }
        if (!ok || out.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0) {
            throw Error("Parse", "not a rational number: '" + std::string(text) + "'", ErrorKind::Input);
        }
        return out;
    };
    if (slash == std::string::npos) return Rat(parse_int(s));
    return Rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

std::string Rat::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

long vp(const BigInt& x, std::uint64_t p) {
    if (x == 0) return kInfiniteValuation;
    mpz_class rest;
    const mpz_class prime(static_cast<unsigned long>(p));
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

long vp(const Rat& x, std::uint64_t p) {
    if (x.is_zero()) return kInfiniteValuation;
    return vp(x.num(), p) - vp(x.den(), p);
}

BigInt ipow(std::uint64_t base, unsigned long exponent) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), exponent);
    return out;
}

Rat rpow(std::uint64_t p, long exponent) {
    if (exponent >= 0) return Rat(ipow(p, static_cast<unsigned long>(exponent)));
    return Rat(BigInt(1), ipow(p, static_cast<unsigned long>(-exponent)));
}

BigInt reduce_mod(const Rat& x, std::uint64_t p, unsigned long k) {
    const BigInt modulus = ipow(p, k);
    if (x.is_zero()) return 0;
    if (vp(x, p) < 0) throw Error("NotIntegral", "reduce_mod needs a p-integral value");
    BigInt inv;
    const BigInt den = x.den();
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0 && modulus != 1) {
        throw Error("NotIntegral", "denominator not invertible modulo p^k");
    }
    BigInt out = (x.num() * inv) % modulus;
    if (out < 0) out += modulus;
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d <= n / d; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        const std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace mumford
