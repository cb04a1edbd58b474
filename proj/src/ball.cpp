#include "padic/ball.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace padic {

namespace {

// Multiplicity of p in a nonzero integer.
long int_valuation(Int n, const Int& p) {
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

} // namespace

std::optional<long> padic_valuation(const Rational& x, const Prime& p) {
    if (x == 0)
        return std::nullopt; // |0|_p = 0 forces v = +infinity
    const Int pp(p.value());
    Int num = numerator(x);
    if (num < 0)
        num = -num;
    return int_valuation(num, pp) - int_valuation(denominator(x), pp);
}

Rational padic_abs(const Rational& x, const Prime& p) {
    const auto v = padic_valuation(x, p);
    if (!v)
        return Rational(0);
    if (*v >= 0)
        return Rational(1, pow_int(Int(p.value()), static_cast<unsigned long>(*v)));
    return Rational(pow_int(Int(p.value()), static_cast<unsigned long>(-*v)));
}

PAdicBall::PAdicBall(const Prime& p, int n, Int c) : prime(p), level(n), center(std::move(c)) {
    if (n < 0)
        throw std::invalid_argument("ball level must be >= 0 (balls live inside Z_p)");
    const Int mod = pow_int(Int(p.value()), static_cast<unsigned long>(n));
    center %= mod;
    if (center < 0)
        center += mod;
}

bool ball_less(const PAdicBall& a, const PAdicBall& b) {
    if (a.level != b.level)
        return a.level < b.level;
    return a.center < b.center;
}

BallRelation ball_relation(const PAdicBall& b1, const PAdicBall& b2) {
    if (b1.prime != b2.prime)
        throw std::invalid_argument("ball_relation: balls over different primes");
    const Int p(b1.prime.value());
    // Congruence of centers mod p^{min level} decides nesting; the larger
    // level (smaller radius) is the inner ball.
    const int nmin = std::min(b1.level, b2.level);
    const Int mod = pow_int(p, static_cast<unsigned long>(nmin));
    if ((b1.center - b2.center) % mod != 0)
        return BallRelation::Disjoint;
    if (b1.level == b2.level)
        return b1.center == b2.center ? BallRelation::Equal : BallRelation::Disjoint;
    return b1.level > b2.level ? BallRelation::FirstInsideSecond
                               : BallRelation::SecondInsideFirst;
}

Rational haar_measure(const PAdicBall& b) {
    return Rational(1, pow_int(Int(b.prime.value()), static_cast<unsigned long>(b.level)));
}

Rational sphere_measure(const PAdicBall& b) {
    const Int p(b.prime.value());
    return Rational(p - 1, pow_int(p, static_cast<unsigned long>(b.level) + 1));
}

std::vector<PAdicBall> subdivide(const PAdicBall& b) {
    const Int step = pow_int(Int(b.prime.value()), static_cast<unsigned long>(b.level));
    std::vector<PAdicBall> children;
    children.reserve(static_cast<std::size_t>(b.prime.value()));
    for (std::int64_t k = 0; k < b.prime.value(); ++k)
        children.emplace_back(b.prime, b.level + 1, b.center + Int(k) * step);
    return children;
}

std::vector<PAdicBall> canonical_decomposition(std::vector<PAdicBall> balls) {
    if (balls.empty())
        return balls;
    for (const auto& b : balls)
        if (b.prime != balls.front().prime)
            throw std::invalid_argument("canonical_decomposition: mixed primes");
    const Prime p = balls.front().prime;

    // Absorption: scan coarse-to-fine; a ball nested in (or equal to) an
    // already kept ball is dropped.  Kept balls end up pairwise disjoint.
    std::sort(balls.begin(), balls.end(), ball_less);
    std::vector<PAdicBall> kept;
    for (const auto& b : balls) {
        bool absorbed = false;
        for (const auto& k : kept) {
            const auto rel = ball_relation(b, k);
            if (rel == BallRelation::Equal || rel == BallRelation::FirstInsideSecond) {
                absorbed = true;
                break;
            }
        }
        if (!absorbed)
            kept.push_back(b);
    }

    // Coalescing: deepest level first, replace every complete family of p
    // siblings by its parent; parents may coalesce again one level up.
    std::map<int, std::set<Int>> by_level;
    for (const auto& b : kept)
        by_level[b.level].insert(b.center);
    for (int lv = by_level.rbegin()->first; lv >= 1; --lv) {
        auto it = by_level.find(lv);
        if (it == by_level.end())
            continue;
        const Int parent_mod = pow_int(Int(p.value()), static_cast<unsigned long>(lv - 1));
        std::map<Int, std::vector<Int>> families; // parent center -> child centers
        for (const auto& c : it->second)
            families[c % parent_mod].push_back(c);
        for (const auto& [parent, children] : families) {
            if (children.size() == static_cast<std::size_t>(p.value())) {
                for (const auto& c : children)
                    it->second.erase(c);
                by_level[lv - 1].insert(parent);
            }
        }
        if (it->second.empty())
            by_level.erase(it);
    }

    std::vector<PAdicBall> out;
    for (const auto& [lv, centers] : by_level)
        for (const auto& c : centers)
            out.emplace_back(p, lv, c);
    std::sort(out.begin(), out.end(), ball_less);
    return out;
}

std::string to_string(const PAdicBall& b) {
    const Int radius_den = pow_int(Int(b.prime.value()), static_cast<unsigned long>(b.level));
    if (b.level == 0)
        return "Zp";
    if (b.center == 0)
        return radius_den.str() + "Zp";
    return b.center.str() + "+" + radius_den.str() + "Zp";
}

PAdicBall parse_ball(const std::string& text, const Prime& p) {
    std::string body = text;
    Int center = 0;
    if (const auto plus = body.find('+'); plus != std::string::npos) {
        try {
            center = Int(body.substr(0, plus));
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("malformed ball literal '" + text + "'");
        }
        body = body.substr(plus + 1);
    }
    if (body.size() < 2 || body.substr(body.size() - 2) != "Zp")
        throw std::invalid_argument("malformed ball literal '" + text + "' (expected ...Zp)");
    body = body.substr(0, body.size() - 2);

    int level = 0;
    if (!body.empty()) {
        Int scale;
        try {
            if (const auto caret = body.find('^'); caret != std::string::npos) {
                // "p^n" exponent form
                const Int base(body.substr(0, caret));
                const int n = std::stoi(body.substr(caret + 1));
                if (n < 0)
                    throw std::invalid_argument("negative level");
                scale = pow_int(base, static_cast<unsigned long>(n));
            } else {
                scale = Int(body);
            }
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("malformed ball literal '" + text + "'");
        }
        // scale must be a power of the prime; its exponent is the level
        Int s = scale;
        const Int pp(p.value());
        while (s > 1 && s % pp == 0) {
            s /= pp;
            ++level;
        }
        if (s != 1)
            throw std::invalid_argument("ball radius in '" + text + "' is not a power of " +
                                        std::to_string(p.value()));
    }
    return PAdicBall(p, level, center);
}

} // namespace padic
