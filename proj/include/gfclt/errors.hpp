#ifndef GFCLT_ERRORS_HPP
#define GFCLT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gfclt {

// Configuration / usage problems (CLI exit code 1).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical / verification failures (CLI exit code 2).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Newton root tracking failed to converge or lost the branch.
struct TrackingError : NumericalError {
  explicit TrackingError(const std::string& msg) : NumericalError(msg) {}
};

// Evaluation requested outside a kernel's validated domain.
struct DomainError : NumericalError {
  explicit DomainError(const std::string& msg) : NumericalError(msg) {}
};

// Contour integration hit a pole or left the analyticity region.
struct QuadratureDomainError : NumericalError {
  explicit QuadratureDomainError(const std::string& msg) : NumericalError(msg) {}
};

// Kernel denominator vanished at the requested point.
struct SingularKernelError : NumericalError {
  explicit SingularKernelError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace gfclt

#endif  // GFCLT_ERRORS_HPP
