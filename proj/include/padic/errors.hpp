#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace padic {

/// A contraction system (or lattice description) failed validation:
/// non-contraction map, overlapping images, ratio sum >= 1, too few maps, ...
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative numerical procedure did not converge (or failed its
/// certification bound).  Carries double-precision snapshots of whatever
/// partial results were available, for diagnostics only.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what,
                              std::vector<std::complex<double>> partial = {})
        : std::runtime_error(what), partial_results(std::move(partial)) {}

    std::vector<std::complex<double>> partial_results;
};

} // namespace padic
