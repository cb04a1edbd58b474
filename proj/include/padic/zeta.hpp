#pragma once

#include "padic/polynomial.hpp"
#include "padic/system.hpp"

#include <optional>
#include <vector>

namespace padic {

/**
 * Geometric zeta function of a self-similar p-adic fractal string, stored
 * exactly as a rational function of z = r^s with r = p^{-d}:
 *
 *     zeta(s) = numerator(z) / denominator(z)
 *             = (sum_k z^{m'_k}) / (1 - sum_j z^{n'_j}).
 *
 * The reduced pair is the same function after exact cancellation of the
 * polynomial gcd; its denominator's roots are precisely the poles.  The
 * cancellation flag records whether anything was actually cancelled, since
 * in that case the naive denominator roots overstate the set of poles.
 */
struct ZetaFunction {
    Prime prime;
    int d = 1;                      // oscillatory lattice step: r = p^{-d}
    Rational r;                     // = p^{-d}
    IntPolynomial numerator;        // sum_k z^{m'_k}
    IntPolynomial denominator;      // 1 - sum_j z^{n'_j}
    IntPolynomial reduced_numerator;
    IntPolynomial reduced_denominator; // coprime with reduced_numerator, constant term +1
    bool cancellation = false;      // true when gcd(numerator, denominator) was nonconstant
};

/// Assemble the zeta function from a validated geometric system.
ZetaFunction build_zeta(const SelfSimilarSystem& system);

/// Assemble the zeta function from abstract lattice data (no geometric checks).
ZetaFunction build_zeta(const LatticeData& lattice);

/// Exact value zeta(1) = numerator(r)/denominator(r): the total Haar measure
/// of the string.  Equals 1 for every geometric system by the gap identity.
/// Throws std::domain_error if s = 1 happens to be a pole (abstract data only).
Rational total_length(const ZetaFunction& zf);

/// Coefficients of z^1..z^M in the power-series expansion of the zeta
/// function: entry [m-1] counts the intervals of length exactly r^m.
/// Computed by the linear recurrence c_m = q_m + sum_j c_{m - n'_j}.
std::vector<Int> series_coefficients(const ZetaFunction& zf, int max_power);

/// The unique root in (0,1) of sum_j x^{n'_j} = 1 when it is rational,
/// found exactly by the rational root theorem (x* = 1/b with b dividing the
/// leading coefficient of the denominator).  Empty when x* is irrational.
std::optional<Rational> rational_moran_root(const ZetaFunction& zf);

} // namespace padic
