#pragma once

#include "padic/dims.hpp"
#include "padic/jets.hpp"
#include "padic/precision.hpp"
#include "padic/system.hpp"
#include "padic/zeta.hpp"

#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace padic {

/**
 * Exact inner tube volume of the thin string: with M the largest integer
 * such that r^M >= eps (taking M = 0 when even r^1 < eps),
 *
 *     V(eps) = p^{-1} ( zeta(1) - sum_{m=1}^{M} c_m r^m ),
 *
 * evaluated in exact rational arithmetic from the series coefficients.
 * This is the sorted-tail form of the volume: intervals shorter than the
 * counted ones each contribute their full length divided by p.
 */
inline Rational volume_direct(const ZetaFunction& zf, const Rational& eps) {
    if (eps <= 0)
        throw std::domain_error("volume_direct: eps must be positive");
    int count = 0;
    for (Rational rm = zf.r; rm >= eps; rm *= zf.r)
        ++count;
    Rational acc = total_length(zf);
    if (count >= 1) {
        const auto c = series_coefficients(zf, count);
        Rational rpow = 1;
        for (int m = 1; m <= count; ++m) {
            rpow *= zf.r;
            acc -= Rational(c[static_cast<std::size_t>(m - 1)]) * rpow;
        }
    }
    return acc / zf.prime.value();
}

inline Rational volume_direct(const SelfSimilarSystem& system, const Rational& eps) {
    return volume_direct(build_zeta(system), eps);
}

/// Same volume at a floating eps, converted exactly (binary floats are
/// dyadic rationals, so nothing is lost).
template <class R> Rational volume_direct(const ZetaFunction& zf, const R& eps) {
    return volume_direct(zf, real_to_rational(eps));
}

/// Thick tube volume: the thin volume plus the Haar measure of the string's
/// boundary, which is the sum of the sphere measures (1 - 1/p) * zeta(1).
inline Rational thick_volume(const ZetaFunction& zf, const Rational& eps) {
    const Rational p(zf.prime.value());
    return volume_direct(zf, eps) + (1 - 1 / p) * total_length(zf);
}

inline Rational thick_volume(const SelfSimilarSystem& system, const Rational& eps) {
    return thick_volume(build_zeta(system), eps);
}

/// Upper end g_K / r_N = p^{n_N - m_K} of the eps range on which the exact
/// explicit formula is proved; in scaled terms p^{d (deg den - deg num)}.
inline Rational validity_threshold(const ZetaFunction& zf) {
    const long exponent =
        static_cast<long>(zf.d) * (zf.denominator.degree() - zf.numerator.degree());
    const Int power = pow_int(Int(zf.prime.value()),
                              static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent >= 0 ? Rational(power) : Rational(1, power);
}

inline Rational validity_threshold(const SelfSimilarSystem& system) {
    return validity_threshold(build_zeta(system));
}

namespace detail {

/**
 * Summation machinery shared by volume_explicit, fourier_G and
 * volume_via_G.  One "line amplitude" is the symmetric partial sum over a
 * single line of complex dimensions,
 *
 *     A_u = sum_n  res_u / p * phase^n / (1 - omega_u - i n p-hat),
 *
 * with phase = eps^{-i p-hat} (equivalently e^{2 pi i x}).  The index runs
 * over n in [-N, N] for a real base line, whose terms pair n <-> -n into an
 * exactly real sum, and over n in [-(N+1), N] otherwise: a half-period line
 * then pairs n <-> -(n+1) internally, and a line with any other base pairs
 * term-by-term with its conjugate partner line over the same range.  For a
 * pole of multiplicity M > 1 the n-th term is instead the full residue of
 * p^{-1} zeta(s) eps^{1-s} / (1-s) at omega_u + i n p-hat, assembled from
 * the (n-independent) Laurent coefficients of zeta and a jet of the
 * remaining analytic factor; eps_log must then be ln(eps) of the eps the
 * phase was built from.
 */
template <class R>
complex_t<R> line_amplitude(const ZetaFunction& zf, const DimensionLine<R>& line,
                            const complex_t<R>& phase, const R& eps_log, int truncation) {
    using C = complex_t<R>;
    if (line.kind != LineKind::Pole)
        throw std::invalid_argument("line_amplitude: tube terms come from pole lines");
    const R p_hat = oscillatory_period<R>(zf);
    const R p = R(zf.prime.value());

    std::vector<C> laurent; // a_{-M}..a_{-1}; only fetched for M > 1
    Jet<C> eps_jet;         // eps^{-h} as a jet in h
    const std::size_t order = static_cast<std::size_t>(line.multiplicity);
    if (line.multiplicity > 1) {
        laurent = principal_part(zf, line);
        eps_jet = jet_exp_linear(C(-eps_log), order);
    }

    // res( p^{-1} zeta(s) eps^{1-s}/(1-s) ; omega + i n p-hat ), with the
    // eps^{1-omega-i n p-hat} factor passed in as eps_pow.
    const auto term = [&](int n, const C& eps_pow) -> C {
        const C one_minus_s = C(R(1)) - line.base - C(R(0), R(n) * p_hat);
        if (line.multiplicity == 1)
            return *line.residue * eps_pow / (C(p) * one_minus_s);
        const Jet<C> rational_part = jet_recip(Jet<C>{one_minus_s, C(R(-1))}, order);
        const Jet<C> g = jet_mul(eps_jet, rational_part, order);
        C acc(0);
        for (std::size_t k = 0; k < order; ++k)
            acc += laurent[order - 1 - k] * g[k];
        return acc * eps_pow / C(p);
    };

    C acc = term(0, C(R(1)));
    C up(R(1)), down(R(1));
    const C phase_conj = conj(phase);
    for (int n = 1; n <= truncation; ++n) {
        up *= phase;
        down *= phase_conj;
        acc += term(n, up) + term(-n, down);
    }
    if (line.base.imag() != 0) {
        down *= phase_conj;
        acc += term(-(truncation + 1), down);
    }
    return acc;
}

/// Discard a numerically-zero imaginary part, loudly if it is not zero.
template <class R> R assert_real(const complex_t<R>& value) {
    const R bound = R("1e-25") * std::max(R(1), R(abs(value.real())));
    if (!(abs(value.imag()) <= bound))
        throw std::logic_error("conjugate-paired sum failed to be real");
    return value.real();
}

} // namespace detail

/**
 * The exact tube formula V(eps) = sum_omega c_omega eps^{1-omega} with
 * c_omega = res(zeta; omega) / (p (1-omega)), summed over every pole line
 * with the conjugate-paired index ranges described above, so each partial
 * sum is exactly real.  Valid (as an identity) for eps below
 * validity_threshold; callers probing outside that range get the analytic
 * continuation of the sum, not the volume.
 */
template <class R>
R volume_explicit(const ZetaFunction& zf, const DimensionSet<R>& dims, const R& eps,
                  int truncation) {
    using C = complex_t<R>;
    if (!(eps > 0))
        throw std::domain_error("volume_explicit: eps must be positive");
    const R eps_log = log(eps);
    const C phase = exp(C(R(0), -dims.oscillatory_period * eps_log)); // eps^{-i p-hat}
    C total(0);
    for (const auto& line : dims.lines) {
        const C eps_base = cpow(eps, C(R(1)) - line.base);
        total += eps_base * detail::line_amplitude(zf, line, phase, eps_log, truncation);
    }
    return detail::assert_real<R>(total);
}

/**
 * The periodic amplitude G_u of one line at an arbitrary point x: the
 * conjugate-completed partial sum of Eq-style terms e^{2 pi i n x} /
 * (1 - omega_u - i n p-hat), scaled by res_u / p.  Exactly real for a
 * real-base line; for any other line realness only emerges in the product
 * eps^{1-omega_u} G_u(x) combined with the partner line, so the real part
 * of the completed sum is returned.
 */
template <class R>
R fourier_G(const ZetaFunction& zf, const DimensionLine<R>& line, const R& x, int truncation) {
    using C = complex_t<R>;
    if (line.multiplicity != 1)
        throw std::invalid_argument("fourier_G: line must be simple");
    const C phase = exp(C(R(0), 2 * pi_value<R>() * x));
    // x plays the role of log_{1/r}(1/eps); the matching ln(eps) is only
    // needed for multiplicity > 1, which is excluded above.
    const C amplitude = detail::line_amplitude(zf, line, phase, R(0), truncation);
    return amplitude.real();
}

/**
 * The tube volume reassembled from the periodic amplitudes:
 * V(eps) = sum_u eps^{1-omega_u} G_u(log_{1/r} eps^{-1}).  Identical
 * summands to volume_explicit, grouped per line, so the two agree to
 * floating roundoff.
 */
template <class R>
R volume_via_G(const ZetaFunction& zf, const DimensionSet<R>& dims, const R& eps,
               int truncation) {
    using C = complex_t<R>;
    if (!(eps > 0))
        throw std::domain_error("volume_via_G: eps must be positive");
    const R eps_log = log(eps);
    const R x = -eps_log / (R(zf.d) * log_prime<R>(zf.prime)); // log_{1/r}(1/eps)
    const C phase = exp(C(R(0), 2 * pi_value<R>() * x));
    C total(0);
    for (const auto& line : dims.lines) {
        const C eps_base = cpow(eps, C(R(1)) - line.base);
        total += eps_base * detail::line_amplitude(zf, line, phase, eps_log, truncation);
    }
    return detail::assert_real<R>(total);
}

template <class R> struct TruncatedVolume {
    R leading;                 // eps^{1-D} times the rightmost amplitude group
    R remainder_bound_exponent; // delta = D - Re(omega_next); +inf if nothing below
};

/**
 * One-line (one-group) truncated tube formula: keeps only the lines on
 * Re = D.  Under strict dominance that is the single real line of the
 * classical statement; when the scaled scaling exponents share a common
 * factor g > 1, the g lines tied at Re = D are all retained, since dropping
 * them would put order-eps^{1-D} oscillation into the o(1) remainder.  The
 * second component is the spectral gap delta governing the relative
 * remainder O(eps^delta).
 */
template <class R>
TruncatedVolume<R> truncated_volume(const ZetaFunction& zf, const DimensionSet<R>& dims,
                                    const R& eps, int truncation) {
    using C = complex_t<R>;
    if (!(eps > 0))
        throw std::domain_error("truncated_volume: eps must be positive");
    const R eps_log = log(eps);
    const C phase = exp(C(R(0), -dims.oscillatory_period * eps_log));
    C total(0);
    R gap = std::numeric_limits<R>::infinity();
    for (const auto& line : dims.lines) {
        if (line.base.real() == dims.D) {
            const C eps_base = cpow(eps, C(R(1)) - line.base);
            total += eps_base * detail::line_amplitude(zf, line, phase, eps_log, truncation);
        } else {
            gap = dims.D - line.base.real(); // lines are sorted, first miss is the gap
            break;
        }
    }
    return {detail::assert_real<R>(total), gap};
}

/// One row of an eps sweep: the exact volume, the explicit-formula value,
/// and their discrepancy, with eps flagged when it sits (within relative
/// 1e-9) on a breakpoint power of r where the volume jumps.
template <class R> struct TubeReport {
    Rational epsilon;
    Rational v_direct;
    R v_explicit;
    int truncation = 0;
    R discrepancy;
    bool breakpoint_flag = false;
};

template <class R> bool near_breakpoint(const ZetaFunction& zf, const R& eps) {
    const R log_r = log(to_real<R>(zf.r));
    const R m = round(log(eps) / log_r);
    // |eps / r^m - 1| <= 1e-9, with r^m reconstructed in high precision
    const R rm = exp(m * log_r);
    return abs(eps / rm - 1) <= R("1e-9");
}

template <class R>
TubeReport<R> tube_report(const ZetaFunction& zf, const DimensionSet<R>& dims,
                          const Rational& eps, int truncation) {
    TubeReport<R> row;
    row.epsilon = eps;
    row.v_direct = volume_direct(zf, eps);
    const R eps_real = to_real<R>(eps);
    row.v_explicit = volume_explicit(zf, dims, eps_real, truncation);
    row.truncation = truncation;
    row.discrepancy = abs(row.v_explicit - to_real<R>(row.v_direct));
    row.breakpoint_flag = near_breakpoint(zf, eps_real);
    return row;
}

} // namespace padic
