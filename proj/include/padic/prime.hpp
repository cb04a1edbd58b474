#pragma once

#include <cstdint>

namespace padic {

/// A certified prime number.  Primality is checked at construction by
/// deterministic trial division; composite input throws std::invalid_argument.
class Prime {
public:
    explicit Prime(std::int64_t p);

    std::int64_t value() const { return p_; }

    friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Prime& a, const Prime& b) { return a.p_ != b.p_; }

private:
    std::int64_t p_;
};

} // namespace padic
