#pragma once

#include "padic/ball.hpp"
#include "padic/prime.hpp"
#include "padic/rational.hpp"

#include <string>

namespace padic {

/**
 * An affine similarity contraction Phi(x) = a x + b on Z_p:
 * a in p Z_p (strict contraction, |a|_p < 1) and b in Z_p.
 * Construction validates both valuation conditions.
 */
struct AffineContraction {
    Prime prime;
    Rational a;
    Rational b;

    AffineContraction(const Prime& p, Rational a_, Rational b_);
};

/// The scaling factor r = |a|_p = p^{-n}, exact.
Rational contraction_ratio(const AffineContraction& f);

/// Valuation n of the scaling coefficient (r = p^{-n}), n >= 1.
int contraction_level(const AffineContraction& f);

/// Exact image of a ball: Phi(c + p^n Z_p) = (a c + b) + p^{n + val(a)} Z_p.
/// Measure scales by the contraction ratio.
PAdicBall image_ball(const AffineContraction& f, const PAdicBall& ball);

/// "Phi(x) = a*x + b" with exact rational coefficients.
std::string to_string(const AffineContraction& f);

} // namespace padic
