// End-to-end verification suite: fourteen numbered checks exercising every
// module against closed-form values, enumeration oracles, and independent
// quadrature paths.  Shared by the acceptance binary and the CLI `verify`
// subcommand.
#ifndef HYPERFOUR_VERIFY_HPP
#define HYPERFOUR_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperfour {

struct CheckResult {
  int index = 0;
  std::string name;
  bool pass = false;
  // Worst residual observed, compared against tolerance.  Checks that mix
  // several tolerances report the worst residual/tolerance ratio instead and
  // set tolerance = 1 (marked "normalized" in the name).
  double residual = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
};

// Runs all checks in order.  When os is non-null, one line per check is
// streamed as it completes (plus a setup line for the shared tables).
// Exceptions escaping an individual check are caught and reported as a
// failure of that check.
std::vector<CheckResult> run_verification(std::ostream* os = nullptr);

bool all_passed(const std::vector<CheckResult>& results);

// "  3  PASS  exceptional null series ..." formatting used by the streamers.
std::string format_check_line(const CheckResult& r);

}  // namespace hyperfour

#endif  // HYPERFOUR_VERIFY_HPP
