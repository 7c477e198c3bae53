#pragma once

#include <stdexcept>
#include <string>

namespace ionprobe {

/// Requested expansion order exceeds the configured maximum.
class CapacityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative numerical routine stopped before reaching the requested
/// tolerance. Carries the best estimate obtained so far and the error
/// bound attached to it.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate,
                     double error_estimate)
        : std::runtime_error(what),
          best_estimate_(best_estimate),
          error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

/// Input samples do not cover enough of a fringe period to support the
/// requested estimate.
class CoverageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Least-squares problem is under-determined or rank deficient.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ionprobe
