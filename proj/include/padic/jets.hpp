#pragma once

#include "padic/polynomial.hpp"
#include "padic/precision.hpp"

#include <vector>

namespace padic {

/**
 * Truncated Taylor ("jet") arithmetic: a Jet holds the coefficients of
 * h^0..h^{len-1} of a function analytic at h = 0.  Just enough operations
 * for Laurent expansions of the zeta function and of the tube integrand
 * about a complex dimension — no need for a general series library.
 */
template <class C> using Jet = std::vector<C>;

template <class C> Jet<C> jet_mul(const Jet<C>& a, const Jet<C>& b, std::size_t len) {
    Jet<C> c(len, C(0));
    for (std::size_t i = 0; i < a.size() && i < len; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

/// Reciprocal series of a jet with a[0] != 0 (standard convolution recursion).
template <class C> Jet<C> jet_recip(const Jet<C>& a, std::size_t len) {
    Jet<C> b(len, C(0));
    b[0] = C(1) / a[0];
    for (std::size_t k = 1; k < len; ++k) {
        C acc(0);
        for (std::size_t i = 1; i <= k && i < a.size(); ++i)
            acc += a[i] * b[k - i];
        b[k] = -acc / a[0];
    }
    return b;
}

/// exp(c h) as a jet: coefficients c^k / k!.
template <class C> Jet<C> jet_exp_linear(const C& c, std::size_t len) {
    Jet<C> e(len, C(0));
    e[0] = C(1);
    for (std::size_t k = 1; k < len; ++k)
        e[k] = e[k - 1] * c / C(typename real_part_of<C>::type(static_cast<unsigned>(k)));
    return e;
}

/// Polynomial evaluated on a jet argument (Horner with jet products).
template <class C>
Jet<C> evaluate_poly_jet(const IntPolynomial& f, const Jet<C>& z, std::size_t len) {
    Jet<C> acc(len, C(0));
    for (int i = f.degree(); i >= 0; --i) {
        acc = jet_mul(acc, z, len);
        acc[0] += C(real_part_t<C>(f.coeff(i)));
    }
    return acc;
}

} // namespace padic
