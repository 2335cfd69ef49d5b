#ifndef CJET_ERRORS_HPP
#define CJET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cjet {

struct OddPointCount : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadGrid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonHermitianMultiplier : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// min(eta) at or below the pinch-off floor; the elliptic problem degenerates.
struct NonpositiveRadius : std::domain_error {
    using std::domain_error::domain_error;
};

struct Overflow : std::domain_error {
    using std::domain_error::domain_error;
};

struct NoConvergence : std::runtime_error {
    int iterations;
    double residual;
    NoConvergence(int iters, double res)
        : std::runtime_error("iterative solve stalled after " + std::to_string(iters) +
                             " iterations, residual " + std::to_string(res)),
          iterations(iters), residual(res) {}
};

struct StepRejected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowTooShort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace cjet

#endif
