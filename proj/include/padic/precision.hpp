#pragma once

#include "padic/polynomial.hpp"
#include "padic/zeta.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace padic {

namespace mp = boost::multiprecision;

/**
 * High-precision binary floating point and its complexification.  All
 * numeric kernels below are templated on the real type so the whole
 * analytic layer can be instantiated at either precision; 128 mantissa
 * bits is the working default, 256 the paranoia setting.
 */
template <unsigned Bits>
using RealBits = mp::number<mp::cpp_bin_float<Bits, mp::digit_base_2>, mp::et_off>;
template <unsigned Bits>
using ComplexBits =
    mp::number<mp::complex_adaptor<mp::cpp_bin_float<Bits, mp::digit_base_2>>, mp::et_off>;

using Real128 = RealBits<128>;
using Real256 = RealBits<256>;
using Complex128 = ComplexBits<128>;
using Complex256 = ComplexBits<256>;

template <class R> struct complex_for;
template <> struct complex_for<Real128> { using type = Complex128; };
template <> struct complex_for<Real256> { using type = Complex256; };
template <class R> using complex_t = typename complex_for<R>::type;

template <class T> struct real_part_of { using type = T; };
template <> struct real_part_of<Complex128> { using type = Real128; };
template <> struct real_part_of<Complex256> { using type = Real256; };
template <class T> using real_part_t = typename real_part_of<T>::type;

/// Rounded conversion of an exact rational (one rounding per component).
template <class R> R to_real(const Rational& q) {
    return R(numerator(q)) / R(denominator(q));
}

/// Exact conversion back: every finite binary float is a dyadic rational.
template <class R> Rational real_to_rational(const R& x) {
    if (x == 0)
        return Rational(0);
    int e = 0;
    R m = frexp(x, &e); // |m| in [1/2, 1)
    const int digits = std::numeric_limits<R>::digits;
    m = ldexp(m, digits); // now exactly integral
    const Int mi = m.template convert_to<Int>();
    const int shift = e - digits;
    if (shift >= 0)
        return Rational(mi * pow_int(Int(2), static_cast<unsigned long>(shift)));
    return Rational(mi, pow_int(Int(2), static_cast<unsigned long>(-shift)));
}

template <class R> R pi_value() { return boost::math::constants::pi<R>(); }

/// Horner evaluation with on-the-fly coefficient conversion; T may be the
/// real or the complex type.
template <class T> T evaluate_poly(const IntPolynomial& f, const T& z) {
    T acc(0);
    for (int i = f.degree(); i >= 0; --i)
        acc = acc * z + T(real_part_t<T>(f.coeff(i)));
    return acc;
}

/// ln p as the working real type.
template <class R> R log_prime(const Prime& p) { return log(R(p.value())); }

/// Oscillatory period p-hat = 2*pi / (d ln p) of the lattice string.
template <class R> R oscillatory_period(const ZetaFunction& zf) {
    return 2 * pi_value<R>() / (R(zf.d) * log_prime<R>(zf.prime));
}

/// base^w for a positive real base and complex exponent.
template <class R> complex_t<R> cpow(const R& base, const complex_t<R>& w) {
    using C = complex_t<R>;
    return exp(w * C(log(base)));
}

template <class R> struct ZetaValue {
    complex_t<R> value;
    bool is_pole = false; // |reduced denominator| fell below the pole tolerance
};

/**
 * Meromorphic evaluation at a complex argument s: substitutes z = r^s =
 * exp(-s d ln p) into the reduced rational function.  The value field is
 * zero (and meaningless) when the pole flag is set.
 */
template <class R> ZetaValue<R> evaluate_zeta(const ZetaFunction& zf, const complex_t<R>& s) {
    using C = complex_t<R>;
    const C z = exp(-s * C(R(zf.d) * log_prime<R>(zf.prime)));
    const C num = evaluate_poly<C>(zf.reduced_numerator, z);
    const C den = evaluate_poly<C>(zf.reduced_denominator, z);
    const R num_mag = abs(num), den_mag = abs(den);
    const R guard = R("1e-12") * std::max(R(1), num_mag);
    if (den_mag < guard)
        return {C(0), true};
    return {num / den, false};
}

/**
 * The unique root x* in (0,1) of sum_j x^{n'_j} = 1, i.e. of the zeta
 * denominator.  Bisection to the requested relative tolerance (the bracket
 * [0,1] is always valid: the denominator is 1 at 0 and 1-N < 0 at 1),
 * followed by a Newton polish which typically lands at full working
 * precision.
 */
template <class R> R moran_root(const ZetaFunction& zf, const R& rel_tol) {
    const IntPolynomial& q = zf.denominator;
    const IntPolynomial dq = derivative(q);
    R lo(0), hi(1);
    for (int iter = 0; iter < 4 * std::numeric_limits<R>::digits; ++iter) {
        if (lo > 0 && hi - lo <= rel_tol * lo)
            break;
        const R mid = (lo + hi) / 2;
        (evaluate_poly<R>(q, mid) > 0 ? lo : hi) = mid;
    }
    R x = (lo + hi) / 2;
    for (int iter = 0; iter < 8; ++iter) {
        const R step = evaluate_poly<R>(q, x) / evaluate_poly<R>(dq, x);
        x -= step;
        if (abs(step) <= std::numeric_limits<R>::epsilon() * x)
            break;
    }
    return x;
}

template <class R> R moran_root(const ZetaFunction& zf) { return moran_root(zf, R("1e-15")); }

/// D = ln x* / ln r, the similarity (= Minkowski) dimension, in (0,1).
template <class R> R similarity_dimension(const ZetaFunction& zf, const R& rel_tol) {
    return -log(moran_root(zf, rel_tol)) / (R(zf.d) * log_prime<R>(zf.prime));
}

template <class R> R similarity_dimension(const ZetaFunction& zf) {
    return similarity_dimension(zf, R("1e-15"));
}

/// The abscissa of convergence of the Dirichlet series coincides with the
/// similarity dimension for self-similar strings.
template <class R> R abscissa_of_convergence(const ZetaFunction& zf) {
    return similarity_dimension<R>(zf);
}

} // namespace padic
