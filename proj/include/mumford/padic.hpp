#pragma once

// Elements of Q_p known to finite precision, and the square-root machinery
// behind fixed points of elliptic elements.

#include <cstdint>
#include <optional>
#include <string>

#include "mumford/rational.hpp"

namespace mumford {

/// The representative of x + p^n Z_p lying in Z[1/p] and in [0, p^n).
Rat canonical_residue(const Rat& x, std::uint64_t p, long n);

/// An element of Q_p known modulo p^precision. `value` is always the
/// canonical residue.
struct PadicApprox {
    Rat value;
    long precision = 0;

    static PadicApprox make(const Rat& value, long precision, std::uint64_t p);

    /// Valuation of the known part; returns precision when the value is
    /// indistinguishable from 0.
    long valuation(std::uint64_t p) const;
    /// True when a and b agree modulo p^min(precision).
    static bool agree(const PadicApprox& a, const PadicApprox& b, std::uint64_t p);
};

PadicApprox add(const PadicApprox& a, const PadicApprox& b, std::uint64_t p);
PadicApprox sub(const PadicApprox& a, const PadicApprox& b, std::uint64_t p);
PadicApprox mul(const PadicApprox& a, const PadicApprox& b, std::uint64_t p);

/// Whether the nonzero rational x is a square in Q_p (0 counts as a square).
bool is_padic_square(const Rat& x, std::uint64_t p);

/// A square root r of x with r^2 = x mod p^n. The returned precision is the
/// number of digits of r that this determines. nullopt if x is not a square.
std::optional<PadicApprox> padic_sqrt(const Rat& x, std::uint64_t p, long n);

/// "7", "-1/3": integers without a denominator.
std::string format_rat(const Rat& x);
/// "7+O(5^2)"
std::string format_approx(const PadicApprox& a, std::uint64_t p);

}  // namespace mumford
