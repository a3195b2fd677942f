// Double-precision-only parts of the modular module: the inverse of lambda
// and the skew multiplier series.

#include "hyperfour/modular.hpp"

#include <cmath>
#include <limits>

namespace hyperfour {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

bool on_slits(cdouble zeta) {
  if (std::abs(zeta.imag()) > 0.0) return false;
  return zeta.real() <= 0.0 || zeta.real() >= 1.0;
}

}  // namespace

cdouble lambda_inverse(const ModularTablesD& tb, cdouble zeta) {
  if (on_slits(zeta)) throw domain_error("lambda_inverse: zeta on the slits");
  const cdouble ipi(0.0, kPi);

  // Seed selection.
  cdouble tau0;
  if (std::abs(zeta) <= 0.25) {
    // Cusp at i inf: lambda ~ 16 q.
    tau0 = std::log(zeta / 16.0) / ipi;
  } else if (std::abs(zeta - 0.5) <= 0.25) {
    tau0 = cdouble(0.0, 1.0);
  } else if (std::abs(zeta) >= 4.0) {
    // Cusps at -1 / +1: lambda ~ 1/2 - (1/16) e^{i pi/(tau +- 1)}.
    // Principal log: Im zeta < 0 puts i pi / L in the right half-plane, so
    // the preimage sits at the cusp -1; Im zeta > 0 at the cusp +1.
    const cdouble L = std::log(8.0 - 16.0 * zeta);
    tau0 = (zeta.imag() <= 0.0 ? -1.0 : 1.0) + ipi / L;
  } else {
    // Coarse grid search over the strip.
    double best = std::numeric_limits<double>::infinity();
    for (double y : {0.08, 0.15, 0.25, 0.4, 0.6, 0.9, 1.4, 2.0}) {
      for (double x = -0.95; x < 1.0; x += 0.1) {
        const cdouble t(x, y);
        const double d = std::abs(lambda_eval(tb, t) - zeta);
        if (d < best) {
          best = d;
          tau0 = t;
        }
      }
    }
  }

  // Damped Newton on lambda(tau) - zeta.
  const double tol = 1e-12 * std::max(1.0, std::abs(zeta));
  cdouble tau = tau0;
  auto [val, der] = lambda_eval_d(tb, tau);
  double res = std::abs(val - zeta);
  for (int it = 0; it < 100; ++it) {
    if (res < tol) break;
    const cdouble step = (val - zeta) / der;
    double damp = 1.0;
    for (int half = 0; half < 40; ++half) {
      const cdouble cand = tau - damp * step;
      if (cand.imag() > 0.0) {
        auto [v2, d2] = lambda_eval_d(tb, cand);
        // Accept when the residual decreases and the value has not jumped
        // onto the slits (overshoot across a cut).
        if (std::abs(v2 - zeta) < res && !on_slits(v2)) {
          tau = cand;
          val = v2;
          der = d2;
          res = std::abs(v2 - zeta);
          break;
        }
      }
      damp *= 0.5;
      if (half == 39)
        throw convergence_error("lambda_inverse: Newton step damping failed");
    }
  }
  if (!(res < 1e-10 * std::max(1.0, std::abs(zeta))))
    throw convergence_error("lambda_inverse: Newton did not converge");
  return reduce_to_d2theta(tau);
}

}  // namespace hyperfour
