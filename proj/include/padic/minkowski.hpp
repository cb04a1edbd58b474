#pragma once

#include "padic/dims.hpp"
#include "padic/precision.hpp"
#include "padic/system.hpp"
#include "padic/tube.hpp"
#include "padic/zeta.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace padic {

namespace detail {

/// gcd of the scaled scaling exponents, read off the denominator polynomial;
/// the pole lines repeat in groups of this size around the dominant circle.
inline int exponent_gcd(const ZetaFunction& zf) {
    int g = 0;
    for (int i = 1; i <= zf.denominator.degree(); ++i)
        if (zf.denominator.coeff(i) != 0)
            g = g == 0 ? i : std::gcd(g, i);
    return g == 0 ? 1 : g;
}

/// Exact bottom values a_m = V(r^m) * rho^m of the normalized volume over
/// the pieces m = from .. from+count-1, where rho = r^{D-1} = p^d x*.
/// Only callable when the Moran root x* is rational.
inline std::vector<Rational> exact_piece_bottoms(const ZetaFunction& zf, const Rational& x_star,
                                                 int from, int count) {
    const Rational rho = x_star * Rational(pow_int(Int(zf.prime.value()),
                                                   static_cast<unsigned long>(zf.d)));
    const int top = from + count - 1;
    const auto c = series_coefficients(zf, top);
    Rational v = total_length(zf) / zf.prime.value();
    Rational rpow = 1, rhopow = 1;
    std::vector<Rational> bottoms;
    for (int m = 1; m <= top; ++m) {
        rpow *= zf.r;
        rhopow *= rho;
        v -= Rational(c[static_cast<std::size_t>(m - 1)]) * rpow / zf.prime.value();
        if (m >= from)
            bottoms.push_back(v * rhopow);
    }
    if (from == 0)
        bottoms.insert(bottoms.begin(), total_length(zf) / zf.prime.value());
    return bottoms;
}

/// Same piece bottoms in floating arithmetic (V still exact, the power not).
template <class R>
std::vector<R> piece_bottoms(const ZetaFunction& zf, const R& rho, int from, int count) {
    const int top = from + count - 1;
    const auto c = series_coefficients(zf, top);
    Rational v = total_length(zf) / zf.prime.value();
    Rational rpow = 1;
    R rhopow = pow(rho, from);
    std::vector<R> bottoms;
    for (int m = 1; m < from; ++m) {
        rpow *= zf.r;
        v -= Rational(c[static_cast<std::size_t>(m - 1)]) * rpow / zf.prime.value();
    }
    for (int m = from; m <= top; ++m) {
        if (m >= 1) {
            rpow *= zf.r;
            v -= Rational(c[static_cast<std::size_t>(m - 1)]) * rpow / zf.prime.value();
        }
        bottoms.push_back(to_real<R>(v) * rhopow);
        rhopow *= rho;
    }
    return bottoms;
}

} // namespace detail

/**
 * The Minkowski dimension: definitionally the similarity dimension for
 * these strings, but cross-checked here against a least-squares slope fit
 * of ln V(eps) against ln eps at the multiplicative midpoints eps =
 * r^{m+1/2}, m = 5..30.  A fitted 1-D further than 0.02 from the closed
 * form means the volume data and the Moran root disagree, which is a bug,
 * not a data property, hence the throw.
 */
template <class R> R minkowski_dimension(const ZetaFunction& zf) {
    const R d_closed = similarity_dimension<R>(zf);
    const R log_r = log(to_real<R>(zf.r));
    R sx(0), sy(0), sxx(0), sxy(0);
    const int m_lo = 5, m_hi = 30;
    const int n = m_hi - m_lo + 1;
    for (int m = m_lo; m <= m_hi; ++m) {
        const R x = (R(m) + R(1) / 2) * log_r;
        const R eps = exp(x);
        const R y = log(to_real<R>(volume_direct(zf, eps)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const R slope = (R(n) * sxy - sx * sy) / (R(n) * sxx - sx * sx);
    if (!(abs(slope - (1 - d_closed)) <= R(1) / 50))
        throw std::logic_error("minkowski_dimension: volume slope fit disagrees with the "
                               "Moran similarity dimension");
    return d_closed;
}

template <class R> R minkowski_dimension(const SelfSimilarSystem& system) {
    return minkowski_dimension<R>(build_zeta(system));
}

/**
 * One period of the normalized volume h(x) = eps^{-(1-D)} V(eps) sampled at
 * eps = r^{m+x}, x = k/S, at a depth m where the subdominant correction is
 * negligible.  V is evaluated exactly at the (dyadic-rational image of the)
 * sample point; only the power is floating.  Within the period h is a
 * single increasing exponential V_m * eps^{-(1-D)}, so the infimum sits at
 * x = 0 and the supremum at the x -> 1 breakpoint.
 */
template <class R> struct VolumeProfile {
    R D;
    int base_depth = 0;
    std::vector<std::pair<R, R>> samples; // (x, h(r^{m+x}))
    R piece_bottom;                       // h at x = 0, the piece infimum
    R piece_top;                          // sup of h as x -> 1
};

template <class R>
VolumeProfile<R> normalized_volume_profile(const ZetaFunction& zf, int samples_per_period,
                                           int base_depth = 40) {
    if (samples_per_period < 4)
        throw std::invalid_argument("normalized_volume_profile: need at least 4 samples");
    VolumeProfile<R> profile;
    profile.D = similarity_dimension<R>(zf);
    profile.base_depth = base_depth;
    const R log_r = log(to_real<R>(zf.r));
    const R one_minus_d = 1 - profile.D;
    // x = 0 sits exactly on the volume jump at eps = r^depth; evaluate it at
    // the exact rational power so rounding cannot flip to the wrong side of
    // the breakpoint.  The interior samples are safely inside the piece.
    Rational exact_eps = 1;
    for (int i = 0; i < base_depth; ++i)
        exact_eps *= zf.r;
    profile.samples.emplace_back(
        R(0), to_real<R>(volume_direct(zf, exact_eps)) * exp(-one_minus_d * base_depth * log_r));
    for (int k = 1; k < samples_per_period; ++k) {
        const R x = R(k) / samples_per_period;
        const R eps = exp((R(base_depth) + x) * log_r);
        const R h = to_real<R>(volume_direct(zf, eps)) * exp(-one_minus_d * log(eps));
        profile.samples.emplace_back(x, h);
    }
    profile.piece_bottom = profile.samples.front().second;
    const R rho = moran_root<R>(zf) * pow(R(zf.prime.value()), zf.d); // r^{D-1} > 1
    profile.piece_top = profile.piece_bottom * rho;
    return profile;
}

/**
 * Quantified Minkowski nonmeasurability.  The string is never measurable:
 * within each piece (r^{m+1}, r^m] the normalized volume runs monotonically
 * from the bottom value a_m = V(r^m) r^{-m(1-D)} up towards rho * a_m, so
 *
 *     liminf h = liminf_m a_m,      limsup h = rho * limsup_m a_m,
 *
 * and the amplitude is at least (rho - 1) * liminf > 0 even when a_m is
 * constant.  The a_m converge (in cycles of g = gcd of scaling exponents)
 * at the geometric rate of the spectral gap; the window [m0, m0+2g) is
 * deepened until consecutive cycles agree to 1e-10 relative.  When the
 * Moran root is rational and every pole line is tied on Re = D the cycle
 * values are exactly periodic rationals and the extrema are reported
 * exactly.
 */
template <class R> struct OscillationReport {
    R D;
    R liminf_est, limsup_est;
    R amplitude;
    int samples_per_period = 0;
    std::optional<Rational> liminf_exact, limsup_exact; // only when provably exact
    int window_base = 0;                                // depth m0 actually used
};

template <class R>
OscillationReport<R> nonmeasurability_report(const ZetaFunction& zf, int samples_per_period = 64) {
    OscillationReport<R> report;
    report.D = similarity_dimension<R>(zf);
    report.samples_per_period = samples_per_period;
    const int g = detail::exponent_gcd(zf);
    const R rho_real = moran_root<R>(zf) * pow(R(zf.prime.value()), zf.d);

    const auto x_star = rational_moran_root(zf);
    if (x_star) {
        const auto dims = complex_dimensions<R>(zf);
        const bool all_tied = dims.lines.back().base.real() == dims.D;
        if (all_tied) {
            // All poles on the dominant circle: a_m is exactly g-periodic
            // once m exceeds the polynomial degrees; 40 is comfortably past.
            const auto cycle = detail::exact_piece_bottoms(zf, *x_star, 40, g);
            const Rational rho =
                *x_star * Rational(pow_int(Int(zf.prime.value()),
                                           static_cast<unsigned long>(zf.d)));
            Rational lo = cycle.front(), hi = cycle.front();
            for (const auto& a : cycle) {
                lo = std::min(lo, a);
                hi = std::max(hi, a);
            }
            report.liminf_exact = lo;
            report.limsup_exact = hi * rho;
            report.liminf_est = to_real<R>(lo);
            report.limsup_est = to_real<R>(hi * rho);
            report.amplitude = report.limsup_est - report.liminf_est;
            report.window_base = 40;
            return report;
        }
    }

    const R settle_tol = R("1e-10");
    for (int m0 = 40; m0 <= 2560; m0 *= 2) {
        const auto window = detail::piece_bottoms(zf, rho_real, m0, 2 * g);
        bool settled = true;
        for (int i = 0; i < g && settled; ++i)
            settled = abs(window[static_cast<std::size_t>(i + g)] /
                              window[static_cast<std::size_t>(i)] -
                          1) <= settle_tol;
        if (settled || m0 * 2 > 2560) {
            if (!settled)
                throw ConvergenceError("nonmeasurability_report: piece values did not settle "
                                       "within the maximum window depth");
            R lo = window[static_cast<std::size_t>(g)], hi = lo;
            for (int i = g; i < 2 * g; ++i) {
                lo = std::min(lo, window[static_cast<std::size_t>(i)]);
                hi = std::max(hi, window[static_cast<std::size_t>(i)]);
            }
            report.liminf_est = lo;
            report.limsup_est = hi * rho_real;
            report.amplitude = report.limsup_est - report.liminf_est;
            report.window_base = m0;
            return report;
        }
    }
    throw std::logic_error("nonmeasurability_report: unreachable");
}

/**
 * The average Minkowski content in closed form,
 * M_av = res(zeta; D) / (p (1-D)), with the residue from the printed
 * real formula at the Moran root.
 */
template <class R> R average_content(const ZetaFunction& zf) {
    const R x = moran_root<R>(zf);
    const R d_value = similarity_dimension<R>(zf);
    const R ln_inv_r = R(zf.d) * log_prime<R>(zf.prime);
    const R exponent_sum = -x * evaluate_poly<R>(derivative(zf.denominator), x);
    const R residue = evaluate_poly<R>(zf.numerator, x) / (ln_inv_r * exponent_sum);
    return residue / (R(zf.prime.value()) * (1 - d_value));
}

template <class R> R average_content(const SelfSimilarSystem& system) {
    return average_content<R>(build_zeta(system));
}

/**
 * The Cesaro mean (1/ln T) Int_{1/T}^1 eps^{-(1-D)} V(eps) deps/eps at
 * T = r^{-L}, computed by exact piecewise antiderivatives: V is the
 * constant V_m on (r^{m+1}, r^m], so the integral telescopes to
 * (rho - 1)/(1-D) * sum_m a_m with a_m = V_m rho^m, no quadrature at all.
 * Converges to average_content at rate O(1/L).
 */
template <class R> R cesaro_average(const ZetaFunction& zf, int pieces) {
    if (pieces < 1)
        throw std::invalid_argument("cesaro_average: need at least one piece");
    const R d_value = similarity_dimension<R>(zf);
    const R rho = moran_root<R>(zf) * pow(R(zf.prime.value()), zf.d);
    const auto bottoms = detail::piece_bottoms(zf, rho, 0, pieces);
    R sum(0);
    for (const auto& a : bottoms)
        sum += a;
    const R ln_inv_r = R(zf.d) * log_prime<R>(zf.prime);
    return sum * (rho - 1) / ((1 - d_value) * R(pieces) * ln_inv_r);
}

template <class R> R cesaro_average(const SelfSimilarSystem& system, int pieces) {
    return cesaro_average<R>(build_zeta(system), pieces);
}

} // namespace padic
