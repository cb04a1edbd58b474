#include "padic/rational.hpp"

#include <stdexcept>

namespace padic {

namespace {

// cpp_int follows C++ literal rules, so a leading 0 switches to octal (and
// "08" throws).  Decimal is the only sane reading for user input.
Int parse_int(std::string digits) {
    std::string sign;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
        sign = digits[0];
        digits.erase(0, 1);
    }
    if (digits.empty())
        throw std::invalid_argument("empty integer literal");
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    return Int(sign + digits);
}

} // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(parse_int(text));
        Int num = parse_int(text.substr(0, slash));
        Int den = parse_int(text.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        // cpp_int throws runtime_error on garbage digits; rethrow uniformly.
        throw std::invalid_argument("malformed rational literal '" + text +
                                    "' (expected \"num/den\" or an integer)");
    }
}

std::string to_string(const Rational& q) {
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Int pow_int(const Int& base, unsigned long exp) {
    Int result = 1;
    Int b = base;
    while (exp) {
        if (exp & 1)
            result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

} // namespace padic
