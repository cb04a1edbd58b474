#include "padic/zeta.hpp"

#include <algorithm>
#include <stdexcept>

namespace padic {

namespace {

ZetaFunction build_from_exponents(const Prime& prime, int d, const std::vector<int>& scaled_n,
                                  const std::vector<int>& scaled_m) {
    ZetaFunction zf{prime, d, Rational(), {}, {}, {}, {}, false};
    zf.r = Rational(1, pow_int(prime.value(), static_cast<unsigned long>(d)));

    const int max_n = *std::max_element(scaled_n.begin(), scaled_n.end());
    std::vector<Int> den(static_cast<std::size_t>(max_n) + 1, Int(0));
    den[0] = 1;
    for (int n : scaled_n)
        den[static_cast<std::size_t>(n)] -= 1;
    zf.denominator = IntPolynomial(std::move(den));

    const int max_m = *std::max_element(scaled_m.begin(), scaled_m.end());
    std::vector<Int> num(static_cast<std::size_t>(max_m) + 1, Int(0));
    for (int m : scaled_m)
        num[static_cast<std::size_t>(m)] += 1;
    zf.numerator = IntPolynomial(std::move(num));

    const IntPolynomial common = poly_gcd(zf.numerator, zf.denominator);
    if (common.degree() >= 1) {
        zf.cancellation = true;
        zf.reduced_numerator = poly_div_exact(zf.numerator, common);
        zf.reduced_denominator = poly_div_exact(zf.denominator, common);
        // Normalize the reduced denominator to constant term +1 (the gcd's
        // constant term is forced to be +-1 since the denominator's is 1).
        if (zf.reduced_denominator.coeff(0) < 0) {
            for (auto& c : zf.reduced_numerator.coeffs)
                c = -c;
            for (auto& c : zf.reduced_denominator.coeffs)
                c = -c;
        }
    } else {
        zf.reduced_numerator = zf.numerator;
        zf.reduced_denominator = zf.denominator;
    }
    return zf;
}

} // namespace

ZetaFunction build_zeta(const SelfSimilarSystem& system) {
    return build_from_exponents(system.prime, system.d, system.scaled_scaling_exponents,
                                system.scaled_gap_exponents);
}

ZetaFunction build_zeta(const LatticeData& lattice) {
    return build_from_exponents(lattice.prime, lattice.d, lattice.scaled_scaling_exponents,
                                lattice.scaled_gap_exponents);
}

Rational total_length(const ZetaFunction& zf) {
    const Rational den = evaluate(zf.reduced_denominator, zf.r);
    if (den == 0)
        throw std::domain_error("total_length: zeta function has a pole at s = 1");
    return evaluate(zf.reduced_numerator, zf.r) / den;
}

std::vector<Int> series_coefficients(const ZetaFunction& zf, int max_power) {
    if (max_power < 0)
        throw std::invalid_argument("series_coefficients: max_power must be >= 0");
    // numerator = denominator * series, solved coefficient by coefficient;
    // the denominator's unit constant term makes the recurrence integral.
    std::vector<Int> c(static_cast<std::size_t>(max_power) + 1, Int(0));
    for (int m = 1; m <= max_power; ++m) {
        Int acc = zf.numerator.coeff(m);
        for (int i = 1; i <= std::min(m, zf.denominator.degree()); ++i)
            acc -= zf.denominator.coeff(i) * c[static_cast<std::size_t>(m - i)];
        c[static_cast<std::size_t>(m)] = acc;
    }
    return std::vector<Int>(c.begin() + 1, c.end());
}

std::optional<Rational> rational_moran_root(const ZetaFunction& zf) {
    // Candidate roots of 1 - sum_j x^{n'_j} in (0,1) are 1/b by the rational
    // root theorem (constant term 1), with b a divisor of |leading coeff|.
    const Int lead_mag = abs(zf.denominator.coeffs.back());
    for (Int b = 2; b * b <= lead_mag; ++b) {
        if (lead_mag % b != 0)
            continue;
        if (evaluate(zf.denominator, Rational(1, b)) == 0)
            return Rational(1, b);
        const Int other = lead_mag / b;
        if (evaluate(zf.denominator, Rational(1, other)) == 0)
            return Rational(1, other);
    }
    if (lead_mag >= 2 && evaluate(zf.denominator, Rational(1, lead_mag)) == 0)
        return Rational(1, lead_mag);
    return std::nullopt;
}

} // namespace padic
