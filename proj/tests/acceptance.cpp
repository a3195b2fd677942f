// Acceptance runner: executes the fourteen verification checks, prints one
// pass/fail line per check, and exits nonzero if any check fails.
#include <chrono>
#include <iostream>

#include "hyperfour/verify.hpp"

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = hyperfour::run_verification(&std::cout);
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  std::cout << "----\n"
            << results.size() - failed << "/" << results.size()
            << " checks passed in " << total << " s\n";
  return hyperfour::all_passed(results) ? 0 : 1;
}
