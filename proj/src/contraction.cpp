#include "padic/contraction.hpp"

#include "padic/errors.hpp"

#include <stdexcept>

namespace padic {

namespace {

// Extended Euclid: returns g = gcd(a, b) and x with a x == g (mod b).
Int mod_inverse(Int a, const Int& mod) {
    a %= mod;
    if (a < 0)
        a += mod;
    Int r0 = mod, r1 = a, x0 = 0, x1 = 1;
    while (r1 != 0) {
        const Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        Int x2 = x0 - q * x1;
        x0 = x1;
        x1 = x2;
    }
    if (r0 != 1)
        throw std::domain_error("mod_inverse: arguments not coprime");
    x0 %= mod;
    if (x0 < 0)
        x0 += mod;
    return x0;
}

// Canonical residue mod p^level of a rational with nonnegative valuation.
Int residue_mod(const Rational& x, const Prime& p, int level) {
    const Int mod = pow_int(Int(p.value()), static_cast<unsigned long>(level));
    const Int num = numerator(x) % mod;
    const Int inv = mod_inverse(denominator(x), mod);
    Int res = (num * inv) % mod;
    if (res < 0)
        res += mod;
    return res;
}

} // namespace

AffineContraction::AffineContraction(const Prime& p, Rational a_, Rational b_)
    : prime(p), a(std::move(a_)), b(std::move(b_)) {
    const auto va = padic_valuation(a, prime);
    if (!va)
        throw ValidationError("map " + to_string(*this) + " is degenerate (a = 0)");
    if (*va < 1)
        throw ValidationError("map " + to_string(*this) + " is not a strict contraction: " +
                              "val_" + std::to_string(p.value()) + "(a) = " +
                              std::to_string(*va) + " < 1");
    const auto vb = padic_valuation(b, prime);
    if (vb && *vb < 0)
        throw ValidationError("map " + to_string(*this) + " has translation outside Z_" +
                              std::to_string(p.value()) + ": val(b) = " + std::to_string(*vb));
}

Rational contraction_ratio(const AffineContraction& f) {
    return padic_abs(f.a, f.prime);
}

int contraction_level(const AffineContraction& f) {
    return static_cast<int>(*padic_valuation(f.a, f.prime));
}

PAdicBall image_ball(const AffineContraction& f, const PAdicBall& ball) {
    if (ball.prime != f.prime)
        throw std::invalid_argument("image_ball: ball and map over different primes");
    const int new_level = ball.level + contraction_level(f);
    const Rational new_center = f.a * Rational(ball.center) + f.b;
    return PAdicBall(f.prime, new_level, residue_mod(new_center, f.prime, new_level));
}

std::string to_string(const AffineContraction& f) {
    std::string s = "Phi(x) = " + to_string(f.a) + "*x";
    if (f.b != 0)
        s += " + " + to_string(f.b);
    return s;
}

} // namespace padic
