#pragma once

#include "padic/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace padic {

/**
 * Dense polynomial with arbitrary-size integer coefficients,
 * coefficient of z^i at index i.  Trailing zeros are trimmed so the
 * degree is well defined (-1 for the zero polynomial).
 */
struct IntPolynomial {
    std::vector<Int> coeffs;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> c) : coeffs(std::move(c)) { trim(); }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }

    /// Coefficient of z^i (zero beyond the degree).
    Int coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(coeffs.size())) ? coeffs[static_cast<std::size_t>(i)]
                                                               : Int(0);
    }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0)
            coeffs.pop_back();
    }
};

bool operator==(const IntPolynomial& a, const IntPolynomial& b);

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);

IntPolynomial derivative(const IntPolynomial& f);

/// Exact evaluation over the rationals (Horner).
Rational evaluate(const IntPolynomial& f, const Rational& x);

/// Largest k with z^k dividing f (0 for f with nonzero constant term,
/// degree+1 == 0 convention not needed: f must be nonzero).
int trailing_root_order(const IntPolynomial& f);

/// Content-free form with positive leading coefficient.
IntPolynomial primitive_part(const IntPolynomial& f);

/// Polynomial gcd over Q, returned as a primitive integer polynomial with
/// positive leading coefficient (constant 1 for coprime inputs).
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);

/// Exact quotient a / b; throws std::logic_error when b does not divide a.
IntPolynomial poly_div_exact(const IntPolynomial& a, const IntPolynomial& b);

/// Yun's square-free decomposition of a nonzero polynomial: returns the
/// nonconstant primitive factors f_i with their multiplicities i, so that
/// f = content * sign * prod f_i^{i} and each f_i is square-free, pairwise
/// coprime.
std::vector<std::pair<IntPolynomial, int>> square_free_decomposition(const IntPolynomial& f);

/// Human-readable form like "1 - z - z^2".
std::string to_string(const IntPolynomial& f, const std::string& var = "z");

} // namespace padic
