#pragma once

#include "padic/jets.hpp"
#include "padic/precision.hpp"
#include "padic/roots.hpp"
#include "padic/zeta.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace padic {

enum class LineKind { Pole, Zero };

/**
 * One vertical line {base + i n p-hat : n in Z} of complex dimensions (or
 * zeros) in the s-plane, anchored by the z-plane root that generates it.
 * The residue is populated for simple poles only; higher-order poles go
 * through principal_part instead.
 */
template <class R> struct DimensionLine {
    using C = complex_t<R>;
    C base;               // Im(base) normalized into [0, p-hat)
    C z_root;             // certified root of the reduced polynomial
    int multiplicity = 1;
    std::optional<C> residue;
    LineKind kind = LineKind::Pole;
};

/**
 * All lines of one kind, sorted by nonincreasing Re(base) and then by
 * increasing Im(base).  D is the real part of the leading line (NaN for an
 * empty set); strict_dominance records whether the leading line is the
 * unique one at that real part — false exactly when the scaled scaling
 * exponents share a common factor g > 1, which puts g lines on Re = D.
 */
template <class R> struct DimensionSet {
    std::vector<DimensionLine<R>> lines;
    R oscillatory_period;
    R D;
    bool strict_dominance = true;
};

/// omega = ln z / ln r with the principal argument, Im shifted into [0, p-hat).
template <class R>
complex_t<R> map_root_to_line(const complex_t<R>& z_root, const Rational& r, const R& p_hat) {
    using C = complex_t<R>;
    if (abs(z_root) == 0)
        throw std::domain_error("map_root_to_line: z = 0 never arises as r^s");
    const R ln_r = log(to_real<R>(r));
    const C omega = log(z_root) / C(ln_r);
    R im = omega.imag();
    im -= floor(im / p_hat) * p_hat;
    if (im < 0)
        im += p_hat;
    if (im >= p_hat)
        im -= p_hat;
    return C(omega.real(), im);
}

/**
 * Residue of the zeta function at every point of a simple pole line (the
 * value is the same for all n): the printed closed form
 *
 *     sum_k z0^{m'_k} / ( ln(1/r) * sum_j n'_j z0^{n'_j} )
 *
 * over the unreduced exponent multisets, where the denominator sum equals
 * -z0 Q'(z0).  When cancellation made z0 a multiple root of the unreduced
 * denominator that form degenerates to 0/0, and the reduced pair supplies
 * the equivalent fallback -P~(z0) / (ln(1/r) z0 Q~'(z0)).
 */
template <class R> complex_t<R> residue_at(const ZetaFunction& zf, const DimensionLine<R>& line) {
    using C = complex_t<R>;
    if (line.kind != LineKind::Pole)
        throw std::invalid_argument("residue_at: residues are defined for pole lines");
    if (line.multiplicity != 1)
        throw std::invalid_argument("residue_at: pole is not simple; use principal_part");
    const C z0 = line.z_root;
    const R ln_inv_r = R(zf.d) * log_prime<R>(zf.prime);
    const C printed_den = -z0 * evaluate_poly<C>(derivative(zf.denominator), z0);
    const R den_scale =
        evaluate_poly<R>(derivative(zf.denominator), R(abs(z0))) * R(abs(z0)); // >= |printed_den|... up to sign pattern
    const R degenerate = R("1e-20") * std::max(R(1), R(abs(den_scale)));
    if (R(abs(printed_den)) > degenerate)
        return evaluate_poly<C>(zf.numerator, z0) / (C(ln_inv_r) * printed_den);
    const C reduced_den = -z0 * evaluate_poly<C>(derivative(zf.reduced_denominator), z0);
    return evaluate_poly<C>(zf.reduced_numerator, z0) / (C(ln_inv_r) * reduced_den);
}

/**
 * Laurent principal part of zeta at the line base, returned as the
 * coefficients (a_{-M}, ..., a_{-1}) with M = line.multiplicity.  Computed
 * by jet arithmetic: z(base + h) = z0 exp(h ln r) expanded to a truncated
 * Taylor series, pushed through the reduced numerator and denominator, and
 * divided after peeling off the h^M zero of the denominator.
 */
template <class R>
std::vector<complex_t<R>> principal_part(const ZetaFunction& zf, const DimensionLine<R>& line) {
    using C = complex_t<R>;
    if (line.kind != LineKind::Pole)
        throw std::invalid_argument("principal_part: defined for pole lines");
    const std::size_t order = static_cast<std::size_t>(line.multiplicity);
    const std::size_t len = 2 * order + 2;
    const C ln_r = C(-R(zf.d) * log_prime<R>(zf.prime));
    Jet<C> zjet = jet_exp_linear(ln_r, len);
    for (auto& c : zjet)
        c *= line.z_root;
    const Jet<C> num = evaluate_poly_jet(zf.reduced_numerator, zjet, len);
    const Jet<C> den = evaluate_poly_jet(zf.reduced_denominator, zjet, len);
    // The denominator jet must vanish to order exactly M; anything else
    // means the claimed multiplicity was wrong.
    const R scale = std::max(R(1), R(abs(den[order])));
    for (std::size_t k = 0; k < order; ++k)
        if (R(abs(den[k])) > R("1e-20") * scale)
            throw std::logic_error("principal_part: denominator jet does not vanish to the "
                                   "claimed multiplicity");
    const Jet<C> peeled(den.begin() + static_cast<std::ptrdiff_t>(order), den.end());
    const Jet<C> laurent = jet_mul(num, jet_recip(peeled, len - order), len - order);
    return std::vector<C>(laurent.begin(), laurent.begin() + static_cast<std::ptrdiff_t>(order));
}

namespace detail {

/// Kill numeric drift in root symmetry: roots with negligible imaginary
/// part become exactly real; conjugate partners become exact conjugates.
template <class R> void symmetrize_roots(std::vector<RootWithMultiplicity<R>>& roots) {
    const R tol = R("1e-25");
    for (auto& rt : roots) {
        const R mag = abs(rt.z);
        if (abs(rt.z.imag()) <= tol * std::max(R(1), mag))
            rt.z = complex_t<R>(rt.z.real(), R(0));
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (roots[i].z.imag() <= 0)
            continue;
        bool paired = false;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (j == i || roots[j].z.imag() >= 0 ||
                roots[j].multiplicity != roots[i].multiplicity)
                continue;
            if (R(abs(roots[j].z - conj(roots[i].z))) <=
                tol * std::max(R(1), R(abs(roots[i].z)))) {
                roots[j].z = conj(roots[i].z);
                paired = true;
                break;
            }
        }
        if (!paired)
            throw std::logic_error("root set of an integer polynomial lost conjugate symmetry");
    }
}

template <class R>
DimensionSet<R> lines_from_roots(const ZetaFunction& zf, const IntPolynomial& poly,
                                 LineKind kind) {
    using C = complex_t<R>;
    DimensionSet<R> set;
    set.oscillatory_period = oscillatory_period<R>(zf);
    set.D = std::numeric_limits<R>::quiet_NaN();
    if (poly.degree() < 1)
        return set;

    auto roots = polynomial_roots<R>(poly);
    symmetrize_roots(roots);
    const R half = set.oscillatory_period / 2;
    const R snap = R("1e-25") * set.oscillatory_period;
    for (const auto& rt : roots) {
        DimensionLine<R> line;
        line.z_root = rt.z;
        line.multiplicity = rt.multiplicity;
        line.kind = kind;
        line.base = map_root_to_line(rt.z, zf.r, set.oscillatory_period);
        R im = line.base.imag();
        if (abs(im) <= snap || abs(im - set.oscillatory_period) <= snap)
            im = 0;
        else if (abs(im - half) <= snap)
            im = half;
        R re = line.base.real();
        if (re == 0)
            re = 0; // normalize -0
        line.base = C(re, im);
        if (kind == LineKind::Pole && rt.multiplicity == 1)
            line.residue = residue_at(zf, line);
        set.lines.push_back(std::move(line));
    }
    // Lines whose z-roots share a circle |z| = const have exactly equal real
    // parts in theory but ulp-level drift in practice; cluster them onto a
    // common representative so ordering and dominance ties are exact.
    std::sort(set.lines.begin(), set.lines.end(),
              [](const auto& a, const auto& b) { return a.base.real() > b.base.real(); });
    for (std::size_t i = 1; i < set.lines.size(); ++i) {
        const R re_prev = set.lines[i - 1].base.real();
        const R re_here = set.lines[i].base.real();
        if (abs(re_prev - re_here) <= R("1e-30") * std::max(R(1), R(abs(re_prev))))
            set.lines[i].base = C(re_prev, set.lines[i].base.imag());
    }
    std::sort(set.lines.begin(), set.lines.end(), [](const auto& a, const auto& b) {
        if (a.base.real() != b.base.real())
            return a.base.real() > b.base.real();
        return a.base.imag() < b.base.imag();
    });
    set.D = set.lines.front().base.real();
    set.strict_dominance = set.lines.size() < 2 || set.lines[1].base.real() != set.D;
    return set;
}

} // namespace detail

/**
 * The complex dimensions: pole lines of the reduced zeta function with
 * multiplicities and (for simple lines) residues.  The leading line is
 * real and simple with base equal to the similarity dimension; that
 * cross-check is enforced here rather than assumed.
 */
template <class R> DimensionSet<R> complex_dimensions(const ZetaFunction& zf) {
    if (zf.reduced_denominator.degree() < 1)
        throw std::invalid_argument("complex_dimensions: reduced denominator is constant");
    DimensionSet<R> set = detail::lines_from_roots<R>(zf, zf.reduced_denominator, LineKind::Pole);
    const R moran_D = similarity_dimension<R>(zf);
    if (!(abs(set.D - moran_D) <= R("1e-12") * std::max(R(1), R(abs(moran_D)))))
        throw std::logic_error("complex_dimensions: leading pole line does not match the "
                               "Moran similarity dimension");
    return set;
}

/// Zero lines of the zeta function.  The z = 0 root of the numerator is
/// excluded (z = r^s is never zero for finite s), so e.g. a numerator that
/// is a pure power of z yields an empty set.
template <class R> DimensionSet<R> zeros_of_zeta(const ZetaFunction& zf) {
    IntPolynomial num = zf.reduced_numerator;
    const int strip = trailing_root_order(num);
    num.coeffs.erase(num.coeffs.begin(), num.coeffs.begin() + strip);
    return detail::lines_from_roots<R>(zf, num, LineKind::Zero);
}

} // namespace padic
