#pragma once

#include "padic/errors.hpp"
#include "padic/polynomial.hpp"
#include "padic/precision.hpp"

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

namespace padic {

template <class R> struct RootWithMultiplicity {
    complex_t<R> z;
    int multiplicity = 1;
};

namespace detail {

template <class C> C horner(const std::vector<C>& coeffs, const C& z) {
    C acc(0);
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = acc * z + coeffs[i];
    return acc;
}

template <class R> std::vector<complex_t<R>> to_complex_coeffs(const IntPolynomial& f) {
    std::vector<complex_t<R>> c(f.coeffs.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = complex_t<R>(R(f.coeffs[i]));
    return c;
}

template <class R>
std::vector<std::complex<double>> downconvert(const std::vector<complex_t<R>>& zs) {
    std::vector<std::complex<double>> out;
    out.reserve(zs.size());
    for (const auto& z : zs)
        out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    return out;
}

} // namespace detail

/**
 * All roots of a square-free polynomial by Aberth–Ehrlich simultaneous
 * iteration from perturbed-circle starting points, with a per-root Newton
 * polish afterwards.  Degrees one and two short-circuit to closed forms.
 * Throws ConvergenceError (carrying double-precision partial results) if
 * the iteration has not settled after max_iterations sweeps.
 */
template <class R>
std::vector<complex_t<R>> aberth_roots(const IntPolynomial& f, int max_iterations = 200) {
    using C = complex_t<R>;
    const int n = f.degree();
    if (n < 1)
        return {};
    const auto a = detail::to_complex_coeffs<R>(f);

    if (n == 1)
        return {-a[0] / a[1]};
    if (n == 2) {
        // Numerically stable quadratic formula: pick the sign that avoids
        // cancellation in -b -+ sqrt(disc), then use the product of roots.
        const C b = a[1], c0 = a[0], a2 = a[2];
        const C sq = sqrt(b * b - 4 * a2 * c0);
        const C q = (real_part_t<C>(b.real() * sq.real() + b.imag() * sq.imag()) >= 0)
                        ? -(b + sq) / 2
                        : -(b - sq) / 2;
        if (abs(q) == 0) // both roots zero (b = c0 = 0)
            return {C(0), C(0)};
        return {q / a2, c0 / q};
    }

    const auto da = detail::to_complex_coeffs<R>(derivative(f));

    // Starting points: circle of radius |a0/an|^(1/n) (geometric mean of the
    // root moduli), angles offset by an irrational-ish constant so no start
    // lies on a symmetry axis of the root set.
    const R lead_ratio = abs(a[0] / a[static_cast<std::size_t>(n)]);
    const R rho = lead_ratio > 0 ? pow(lead_ratio, R(1) / n) : R(1) / 2;
    const R two_pi = 2 * pi_value<R>();
    std::vector<C> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const R theta = two_pi * k / n + R("0.376991118");
        z[static_cast<std::size_t>(k)] = rho * C(cos(theta), sin(theta));
    }

    const R step_tol = 16 * std::numeric_limits<R>::epsilon();
    bool settled = false;
    for (int iter = 0; iter < max_iterations && !settled; ++iter) {
        settled = true;
        for (std::size_t k = 0; k < z.size(); ++k) {
            const C fz = detail::horner(a, z[k]);
            if (abs(fz) == 0)
                continue;
            const C fpz = detail::horner(da, z[k]);
            if (abs(fpz) == 0) {
                // Sitting on a critical point: nudge off and keep sweeping.
                z[k] += C(step_tol, step_tol) + C(R(1) / 1024, R(1) / 2048);
                settled = false;
                continue;
            }
            const C newton = fz / fpz;
            C repulsion(0);
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k)
                    repulsion += C(1) / (z[k] - z[j]);
            const C denom = C(1) - newton * repulsion;
            const C w = (abs(denom) == 0) ? newton : newton / denom;
            z[k] -= w;
            const R scale = std::max(R(1), R(abs(z[k])));
            if (abs(w) > step_tol * scale)
                settled = false;
        }
    }
    if (!settled)
        throw ConvergenceError("root iteration did not converge within " +
                                   std::to_string(max_iterations) + " sweeps",
                               detail::downconvert<R>(z));

    // Newton polish, root by root, to squeeze out the Aberth coupling error.
    for (auto& zk : z)
        for (int iter = 0; iter < 6; ++iter) {
            const C fpz = detail::horner(da, zk);
            if (abs(fpz) == 0)
                break;
            const C step = detail::horner(a, zk) / fpz;
            zk -= step;
            if (abs(step) <= std::numeric_limits<R>::epsilon() * std::max(R(1), R(abs(zk))))
                break;
        }
    return z;
}

/// Certified residual bound from the module contract:
/// |f(z)| <= 1e-25 * degree * max|coeff| * max(1,|z|)^degree.
template <class R> bool certify_root(const IntPolynomial& f, const complex_t<R>& z) {
    Int max_coeff = 0;
    for (const auto& c : f.coeffs)
        max_coeff = std::max(max_coeff, Int(abs(c)));
    const R bound = R("1e-25") * R(f.degree()) * R(max_coeff) *
                    pow(std::max(R(1), R(abs(z))), f.degree());
    const R residual = abs(evaluate_poly<complex_t<R>>(f, z));
    return residual <= bound;
}

/**
 * All roots of an arbitrary nonzero polynomial with exact multiplicities:
 * exact square-free decomposition first (so every numeric solve sees only
 * simple roots), then Aberth per factor.  Each root is certified against
 * the original polynomial; roots of one square-free factor closer than the
 * cluster tolerance 1e-20 mean the numeric solve failed, not a genuine
 * multiple root, so both defects raise ConvergenceError.
 */
template <class R>
std::vector<RootWithMultiplicity<R>> polynomial_roots(const IntPolynomial& f,
                                                      int max_iterations = 200) {
    std::vector<RootWithMultiplicity<R>> out;
    const R cluster_tol = R("1e-20");
    for (const auto& [factor, multiplicity] : square_free_decomposition(f)) {
        const auto roots = aberth_roots<R>(factor, max_iterations);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            for (std::size_t j = i + 1; j < roots.size(); ++j)
                if (R(abs(roots[i] - roots[j])) < cluster_tol)
                    throw ConvergenceError("spurious root cluster inside a square-free factor",
                                           detail::downconvert<R>(roots));
            if (!certify_root<R>(f, roots[i]))
                throw ConvergenceError("root failed the certified residual bound",
                                       detail::downconvert<R>(roots));
            out.push_back({roots[i], multiplicity});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.z.real() != b.z.real())
            return a.z.real() > b.z.real();
        return a.z.imag() < b.z.imag();
    });
    return out;
}

} // namespace padic
