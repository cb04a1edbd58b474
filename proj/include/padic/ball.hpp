#pragma once

#include "padic/prime.hpp"
#include "padic/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace padic {

/// p-adic valuation of a rational: the v with x = p^v * a/b, p dividing
/// neither a nor b.  An empty optional encodes +infinity (x = 0).
std::optional<long> padic_valuation(const Rational& x, const Prime& p);

/// |x|_p = p^{-v}, exactly representable as a rational; |0|_p = 0.
Rational padic_abs(const Rational& x, const Prime& p);

/**
 * The interval a + p^n Z_p inside Z_p.
 *
 *  - level n >= 0 is the exponent of the radius p^{-n};
 *  - the center is stored as the canonical residue mod p^n
 *    (level 0 with center 0 is the ambient ball Z_p itself);
 *  - Haar measure is exactly p^{-n}.
 */
struct PAdicBall {
    Prime prime;
    int level;
    Int center;

    /// Canonicalizes the center mod p^level; throws std::invalid_argument
    /// for negative level.
    PAdicBall(const Prime& p, int n, Int c);

    friend bool operator==(const PAdicBall& a, const PAdicBall& b) {
        return a.prime == b.prime && a.level == b.level && a.center == b.center;
    }
};

/// Deterministic ordering: coarser (smaller level) first, then by center.
bool ball_less(const PAdicBall& a, const PAdicBall& b);

enum class BallRelation { Disjoint, Equal, FirstInsideSecond, SecondInsideFirst };

/// Trichotomy for balls: any two are disjoint, equal, or nested.
/// Throws std::invalid_argument when the primes differ.
BallRelation ball_relation(const PAdicBall& b1, const PAdicBall& b2);

/// mu_H(a + p^n Z_p) = p^{-n}, exact.
Rational haar_measure(const PAdicBall& b);

/// Measure of the sphere {x : |x - a|_p = p^{-n}}: p^{-n} (1 - 1/p), exact.
Rational sphere_measure(const PAdicBall& b);

/// The p pairwise-disjoint children at level+1 whose union is b,
/// ordered by center.
std::vector<PAdicBall> subdivide(const PAdicBall& b);

/// Canonical decomposition of a finite union of balls into its maximal
/// disjoint balls (convex components): nested balls are absorbed and every
/// complete family of p siblings is coalesced into its parent, to a fixed
/// point.  Result is sorted by ball_less.  Throws std::invalid_argument
/// when the balls do not share one prime.
std::vector<PAdicBall> canonical_decomposition(std::vector<PAdicBall> balls);

/// Text form "c+p^nZp" ("Zp" alone for the ambient ball).
std::string to_string(const PAdicBall& b);

/// Parses the text form accepted by the CLI: "c+p^nZp", "p^nZp" or "Zp"
/// (prime given separately so "Zp" is unambiguous).
PAdicBall parse_ball(const std::string& text, const Prime& p);

} // namespace padic
