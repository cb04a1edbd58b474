#pragma once

#include "padic/ball.hpp"
#include "padic/contraction.hpp"
#include "padic/errors.hpp"

#include <vector>

namespace padic {

/**
 * A validated self-similar contraction system on Z_p.
 *
 * Invariants established by validate_system:
 *  - maps sorted by nonincreasing ratio (scaling_exponents nondecreasing),
 *    images pairwise disjoint, sum of ratios < 1;
 *  - gaps are the maximal balls of the complement, sorted by nonincreasing
 *    measure (gap_exponents nondecreasing);
 *  - gap identity: sum_j p^{-n_j} + sum_k p^{-m_k} = 1 exactly;
 *  - d = gcd of all exponents, scaled exponents have gcd 1, r = p^{-d}.
 */
struct SelfSimilarSystem {
    Prime prime;
    std::vector<AffineContraction> maps;
    std::vector<int> scaling_exponents;        // n_1 <= ... <= n_N
    std::vector<PAdicBall> gaps;               // generators G_1..G_K
    std::vector<int> gap_exponents;            // m_1 <= ... <= m_K
    int d = 1;
    std::vector<int> scaled_scaling_exponents; // n'_j = n_j / d
    std::vector<int> scaled_gap_exponents;     // m'_k = m_k / d
    Rational r;                                // p^{-d}
};

/**
 * Abstract input mode: a string specified by its lattice data alone
 * (no maps, no geometric realizability check, gap identity not enforced).
 * d is derived as the gcd of the raw exponents.
 */
struct LatticeData {
    Prime prime;
    int d = 1;
    std::vector<int> scaled_scaling_exponents;
    std::vector<int> scaled_gap_exponents;
};

/// Builds LatticeData from raw exponent multisets (lengths p^{-n_j}, gaps
/// p^{-m_k}); d = gcd of all entries.  Throws ValidationError on empty or
/// nonpositive exponents.
LatticeData make_lattice(const Prime& p, const std::vector<int>& scaling_exponents,
                         const std::vector<int>& gap_exponents);

/// Validates a full contraction system: N >= 2, one shared prime, strict
/// contractions, pairwise disjoint images, ratio sum < 1; extracts gaps and
/// populates all derived lattice data.  Each failure mode is reported
/// distinctly via ValidationError.
SelfSimilarSystem validate_system(const std::vector<AffineContraction>& maps);

/// The maximal balls of Z_p minus the union of the map images, found by
/// recursive subdivision (depth bounded by max n_j).  Result sorted by
/// nonincreasing measure, then by center.
std::vector<PAdicBall> extract_gaps(const std::vector<AffineContraction>& maps);

/// c_m = number of intervals of the string with length exactly r^m,
/// m = 1..M, via the linear recurrence c_m = q_m + sum_j c_{m - n'_j}
/// (q_m = multiplicity of m among the m'_k).  Exact big integers.
std::vector<Int> length_counts(const SelfSimilarSystem& sys, int M);
std::vector<Int> length_counts(const LatticeData& lat, int M);

/// All intervals Phi_w(G_k) over words w of length <= max_word_length,
/// Phi_w = Phi_{w_alpha} o ... o Phi_{w_1}.  Pairwise disjoint; sorted by
/// level then center.
std::vector<PAdicBall> enumerate_intervals(const SelfSimilarSystem& sys, int max_word_length);

/// Pruned variant for histogram oracles: additionally discards every branch
/// whose interval would have scaled length exponent (level / d) beyond
/// max_scaled_exponent.  Covers all intervals with m <= max_scaled_exponent
/// provided max_word_length is large enough (weight of a word grows by at
/// least min n'_j per letter).
std::vector<PAdicBall> enumerate_intervals(const SelfSimilarSystem& sys, int max_word_length,
                                           int max_scaled_exponent);

} // namespace padic
