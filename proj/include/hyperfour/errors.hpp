// Exception hierarchy shared by all hyperfour modules.
#ifndef HYPERFOUR_ERRORS_HPP
#define HYPERFOUR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hyperfour {

// Base class so callers can catch everything from this library at once.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// A series operation was given structurally invalid input (zero leading
// coefficient, missing constant term, truncation too small, ...).
struct invalid_series_error : error {
  using error::error;
};

// Generic invalid argument to a higher-level operation.
struct invalid_input_error : error {
  using error::error;
};

// Point outside the mathematical domain of the function (e.g. Im tau <= 0,
// evaluation on a slit).
struct domain_error : error {
  using error::error;
};

// An iteration failed to converge within its step cap.
struct convergence_error : error {
  using error::error;
};

// Fundamental-domain reduction exceeded its step cap; the input is too close
// to the real line for float resolution.
struct reduction_overflow_error : error {
  using error::error;
};

// An internal invariant that is guaranteed by theory was violated; indicates
// an implementation bug rather than bad input.
struct algorithm_error : error {
  using error::error;
};

// Two independent computation paths disagree beyond their combined tolerance.
struct consistency_error : error {
  using error::error;
};

// An oscillatory quadrature could not resolve the phase within its node
// budget.
struct resolution_error : error {
  using error::error;
};

}  // namespace hyperfour

#endif  // HYPERFOUR_ERRORS_HPP
