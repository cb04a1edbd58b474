#include "padic/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace padic {

namespace {

// Internal gcd machinery runs over Q to keep the Euclidean division exact.
using RatPoly = std::vector<Rational>; // coefficient of z^i at index i

void rat_trim(RatPoly& f) {
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

RatPoly to_rat(const IntPolynomial& f) {
    RatPoly g(f.coeffs.size());
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        g[i] = Rational(f.coeffs[i]);
    return g;
}

// Remainder of the Euclidean division a mod b, b nonzero.
RatPoly rat_mod(RatPoly a, const RatPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        const Rational q = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= q * b[i];
        a.pop_back(); // leading term cancels exactly
        rat_trim(a);
    }
    return a;
}

// Primitive integer polynomial (positive leading coefficient) proportional
// to a rational polynomial.
IntPolynomial rat_to_primitive(const RatPoly& f) {
    if (f.empty())
        return IntPolynomial{};
    Int den_lcm = 1;
    for (const auto& c : f)
        den_lcm = lcm(den_lcm, denominator(c));
    std::vector<Int> ints(f.size());
    Int content = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        ints[i] = numerator(f[i]) * (den_lcm / denominator(f[i]));
        content = gcd(content, ints[i]);
    }
    if (ints.back() < 0)
        content = -content;
    for (auto& c : ints)
        c /= content;
    return IntPolynomial(std::move(ints));
}

} // namespace

bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs == b.coeffs;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> c(std::max(a.coeffs.size(), b.coeffs.size()), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> c(std::max(a.coeffs.size(), b.coeffs.size()), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero())
        return IntPolynomial{};
    std::vector<Int> c(a.coeffs.size() + b.coeffs.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            c[i + j] += a.coeffs[i] * b.coeffs[j];
    return IntPolynomial(std::move(c));
}

IntPolynomial derivative(const IntPolynomial& f) {
    if (f.degree() < 1)
        return IntPolynomial{};
    std::vector<Int> c(f.coeffs.size() - 1);
    for (std::size_t i = 1; i < f.coeffs.size(); ++i)
        c[i - 1] = f.coeffs[i] * Int(i);
    return IntPolynomial(std::move(c));
}

Rational evaluate(const IntPolynomial& f, const Rational& x) {
    Rational acc(0);
    for (int i = f.degree(); i >= 0; --i)
        acc = acc * x + Rational(f.coeff(i));
    return acc;
}

int trailing_root_order(const IntPolynomial& f) {
    if (f.is_zero())
        throw std::logic_error("trailing_root_order of the zero polynomial");
    int k = 0;
    while (f.coeffs[static_cast<std::size_t>(k)] == 0)
        ++k;
    return k;
}

IntPolynomial primitive_part(const IntPolynomial& f) {
    if (f.is_zero())
        return f;
    return rat_to_primitive(to_rat(f));
}

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
    RatPoly x = to_rat(a), y = to_rat(b);
    rat_trim(x);
    rat_trim(y);
    while (!y.empty()) {
        RatPoly r = rat_mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    if (x.empty())
        return IntPolynomial{};
    return rat_to_primitive(x);
}

IntPolynomial poly_div_exact(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero())
        throw std::logic_error("poly_div_exact: division by zero polynomial");
    RatPoly x = to_rat(a);
    const RatPoly y = to_rat(b);
    RatPoly q(x.size() >= y.size() ? x.size() - y.size() + 1 : 0, Rational(0));
    while (x.size() >= y.size() && !x.empty()) {
        const Rational c = x.back() / y.back();
        const std::size_t shift = x.size() - y.size();
        q[shift] = c;
        for (std::size_t i = 0; i < y.size(); ++i)
            x[shift + i] -= c * y[i];
        x.pop_back();
        rat_trim(x);
    }
    if (!x.empty())
        throw std::logic_error("poly_div_exact: not an exact division");
    // The quotient of integer polynomials under exact division has integer
    // coefficients only when b is primitive-up-to-sign of a factor; in
    // general scale back through the rationals.
    std::vector<Int> out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (denominator(q[i]) != 1)
            throw std::logic_error("poly_div_exact: quotient not integral");
        out[i] = numerator(q[i]);
    }
    return IntPolynomial(std::move(out));
}

std::vector<std::pair<IntPolynomial, int>> square_free_decomposition(const IntPolynomial& f_in) {
    if (f_in.is_zero())
        throw std::logic_error("square_free_decomposition of the zero polynomial");
    std::vector<std::pair<IntPolynomial, int>> out;
    IntPolynomial f = primitive_part(f_in);
    if (f.degree() < 1)
        return out;

    // Yun's algorithm (characteristic zero).  All divisions below are exact
    // over the integers by Gauss's lemma: the divisor is always a primitive
    // polynomial dividing the dividend in Q[z].
    IntPolynomial g = poly_gcd(f, derivative(f));
    if (g.degree() < 1) {
        out.emplace_back(f, 1);
        return out;
    }
    IntPolynomial c = poly_div_exact(f, g);
    IntPolynomial d = poly_div_exact(derivative(f), g) - derivative(c);
    for (int multiplicity = 1; c.degree() >= 1; ++multiplicity) {
        IntPolynomial a = poly_gcd(c, d);
        if (a.degree() >= 1)
            out.emplace_back(a, multiplicity);
        c = poly_div_exact(c, a);
        d = poly_div_exact(d, a) - derivative(c);
    }
    return out;
}

std::string to_string(const IntPolynomial& f, const std::string& var) {
    if (f.is_zero())
        return "0";
    std::string s;
    for (int i = 0; i <= f.degree(); ++i) {
        const Int& a = f.coeffs[static_cast<std::size_t>(i)];
        if (a == 0)
            continue;
        const Int mag = a < 0 ? Int(-a) : a;
        if (s.empty())
            s += (a < 0 ? "-" : "");
        else
            s += (a < 0 ? " - " : " + ");
        if (mag != 1 || i == 0)
            s += mag.str();
        if (i >= 1) {
            if (mag != 1)
                s += "*";
            s += var;
            if (i >= 2)
                s += "^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace padic
