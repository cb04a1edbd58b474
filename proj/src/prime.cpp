#include "padic/prime.hpp"

#include <stdexcept>
#include <string>

namespace padic {

Prime::Prime(std::int64_t p) : p_(p) {
    if (p < 2)
        throw std::invalid_argument("prime must be >= 2, got " + std::to_string(p));
    for (std::int64_t q = 2; q * q <= p; ++q)
        if (p % q == 0)
            throw std::invalid_argument(std::to_string(p) + " is not prime (divisible by " +
                                        std::to_string(q) + ")");
}

} // namespace padic
