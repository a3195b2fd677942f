#include "hyperfour/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <random>
#include <vector>

#include "hyperfour/biortho.hpp"
#include "hyperfour/expand.hpp"
#include "hyperfour/halfplane.hpp"
#include "hyperfour/hfs.hpp"
#include "hyperfour/kleingordon.hpp"
#include "hyperfour/modular.hpp"
#include "hyperfour/quadrature.hpp"

namespace hyperfour {
namespace {

constexpr double kPi = 3.14159265358979323846;
const cdouble I(0.0, 1.0);

// Shared immutable state: the modular q-series tables and one biorthogonal
// table deep enough for the truncated Poisson-kernel reconstruction (n <= 25).
struct Context {
  ModularTablesD tb = build_tables<double>(64);
  BiorthoTable bt{25, 64};
};

using Clock = std::chrono::steady_clock;

CheckResult timed(int index, std::string name, double tol,
                  const std::function<double(void)>& worst_residual) {
  CheckResult r;
  r.index = index;
  r.name = std::move(name);
  r.tolerance = tol;
  const auto t0 = Clock::now();
  try {
    r.residual = worst_residual();
    r.pass = std::isfinite(r.residual) && r.residual <= tol;
  } catch (const std::exception& e) {
    r.residual = std::numeric_limits<double>::infinity();
    r.pass = false;
    r.name += std::string(" [exception: ") + e.what() + "]";
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

// 1. The first three Fourier coefficients of lambda: 16, -128, 704.
CheckResult check_lambda_coeffs(const Context& cx) {
  return timed(1, "lambda Fourier coefficients 16, -128, 704", 1e-9, [&] {
    auto hl = [&](cdouble tau) { return lambda_eval(cx.tb, tau); };
    double worst = 0.0;
    const double oracle[3] = {16.0, -128.0, 704.0};
    for (int n = 1; n <= 3; ++n)
      worst = std::max(worst,
                       std::abs(extract_coeff(hl, n, 0.8) - oracle[n - 1]));
    return worst;
  });
}

// 2. The lambda functional equations at 100 random points, residuals taken
// relative to the magnitudes involved (lambda is exponentially large near
// the cusps +-1, so an absolute residual would be meaningless there).
CheckResult check_lambda_functional(const Context& cx) {
  return timed(2, "lambda functional equations (100 random tau)", 1e-8, [&] {
    std::mt19937 gen(12345);
    std::uniform_real_distribution<double> ur(-2.0, 2.0);
    std::uniform_real_distribution<double> uy(std::log(1e-3), std::log(10.0));
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const cdouble tau(ur(gen), std::exp(uy(gen)));
      const cdouble l = lambda_eval(cx.tb, tau);
      const cdouble ls = lambda_eval(cx.tb, -1.0 / tau);
      const cdouble lt = lambda_eval(cx.tb, tau + 1.0);
      const cdouble lm = l / (l - 1.0);
      const double r1 = std::abs(ls + l - 1.0) /
                        std::max({1.0, std::abs(l), std::abs(ls)});
      const double r2 = std::abs(lt - lm) /
                        std::max({1.0, std::abs(lt), std::abs(lm)});
      worst = std::max({worst, r1, r2});
    }
    return worst;
  });
}

// 3. The exceptional null series of P(w) = w at N = 300:
// -1 + sum lambdahat(n) (e^{i pi n tau} + e^{-i pi n / tau}) = 0.
CheckResult check_exceptional_series(const Context&) {
  return timed(3, "exceptional null series (N = 300)", 1e-8, [&] {
    const auto tb300 = build_tables<double>(300);
    const auto c = exceptional_series({0.0, 1.0}, 300, tb300);
    return std::max(std::abs(hfs_eval(c, I)),
                    std::abs(hfs_eval(c, cdouble(0.2, 1.1))));
  });
}

// 4. A_0(0) = (4/pi^2) log 2.
CheckResult check_a0_value(const Context& cx) {
  return timed(4, "A_0(0) = (4/pi^2) log 2", 1e-8, [&] {
    return std::abs(cx.bt.a0_eval(0.0) - 4.0 * std::log(2.0) / (kPi * kPi));
  });
}

// 5. A_n(0) and A_n(0) + B_n(0) against the four-squares counting oracle.
CheckResult check_r4_values(const Context& cx) {
  return timed(5, "A_n(0), A_n(0)+B_n(0) vs r_4 oracle (n = 1..10)", 1e-8, [&] {
    double worst = 0.0;
    for (int n = 1; n <= 10; ++n) {
      const double half = r4_count(n, Lattice::half_integers) /
                          (2.0 * kPi * kPi * n);
      const double full = r4_count(n, Lattice::integers) /
                          (2.0 * kPi * kPi * n);
      const cdouble an = cx.bt.an_eval(n, 0.0);
      const cdouble bn = cx.bt.bn_eval(n, 0.0);
      worst = std::max({worst, std::abs(an - half), std::abs(an + bn - full)});
    }
    return worst;
  });
}

// 6. Semicircle biorthogonality (m/2n) int_{T+} S_n(1/lambda) e^{i pi m eta}
// d eta = delta_{mn}.
CheckResult check_biorthogonality(const Context& cx) {
  return timed(6, "semicircle biorthogonality (1 <= m, n <= 8)", 1e-7, [&] {
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n)
      for (int m = 1; m <= 8; ++m) {
        const cdouble v = cx.bt.pairing_a(n, m).value;
        worst = std::max(worst, std::abs(v - (m == n ? 1.0 : 0.0)));
      }
    return worst;
  });
}

// 7. The hyperbolic Fourier expansion of the Poisson kernel:
// P(tau, x) = Im tau / (pi |tau - x|^2)
//           = A_0(x) + 2 Re sum_{n>=1} (A_n(x) e^{i pi n tau}
//                                       + B_n(x) e^{-i pi n / tau}).
CheckResult check_poisson_reconstruction(const Context& cx) {
  return timed(7, "Poisson kernel reconstruction (N = 25)", 1e-6, [&] {
    double worst = 0.0;
    for (cdouble tau : {cdouble(0.0, 1.0), cdouble(0.3, 0.8)})
      for (double x : {0.0, 0.7, 3.0}) {
        const double lhs = tau.imag() / (kPi * std::norm(tau - x));
        cdouble s = cx.bt.a0_eval(x);
        for (int n = 1; n <= 25; ++n) {
          const cdouble ea = std::exp(I * (kPi * n) * tau);
          const cdouble eb = std::exp(-I * (kPi * n) / tau);
          s += 2.0 * (cx.bt.an_eval(n, x) * ea + cx.bt.bn_eval(n, x) * eb).real();
        }
        worst = std::max(worst, std::abs(s - lhs));
      }
    return worst;
  });
}

// 8. Inversion symmetry B_n(x) = x^{-2} A_n(-1/x).
CheckResult check_symmetry(const Context& cx) {
  return timed(8, "inversion symmetry B_n(x) = x^{-2} A_n(-1/x)", 1e-8, [&] {
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n)
      for (double x : {-2.5, -1.0, -0.3, 0.3, 1.0, 2.5}) {
        const cdouble lhs = cx.bt.bn_eval(n, x);
        const cdouble rhs = cx.bt.an_eval(n, -1.0 / x) / (x * x);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    return worst;
  });
}

// 9. Periodization: sum_j A_n(x + 2j) -> e^{-i pi n x}/2, sum_j B_n -> 0.
CheckResult check_summation(const Context& cx) {
  return timed(9, "periodization sums (J = 10^4)", 1e-3, [&] {
    const long J = 10000;
    double worst = 0.0;
    for (double x : {0.0, 0.3}) {
      const cdouble s0 = cx.bt.periodization_sum(BiorthoTable::Which::A0, 0, x, J).value;
      worst = std::max(worst, std::abs(s0 - 0.5));
      for (int n = 1; n <= 2; ++n) {
        const cdouble sa = cx.bt.periodization_sum(BiorthoTable::Which::A, n, x, J).value;
        const cdouble sb = cx.bt.periodization_sum(BiorthoTable::Which::B, n, x, J).value;
        worst = std::max({worst,
                          std::abs(sa - 0.5 * std::exp(-I * (kPi * n) * cdouble(x))),
                          std::abs(sb)});
      }
    }
    return worst;
  });
}

// 10. Fly-catcher height: exact small cases, the pointwise bound
// n*(tau) <= 1/2 + 1/(2 Im tau), and the mean-height law
// E[n*] ~ pi^{-2} log^2(1/y) with O(log) slack.  Mixed tolerances, so the
// residual is the worst sub-check ratio (tolerance 1).
CheckResult check_height(const Context&) {
  return timed(10, "fly-catcher height: values, bound, mean law (normalized)", 1.0, [&] {
    double worst = std::abs(flycatcher_height(cdouble(0.0, 2.0)).height - 0);
    worst = std::max(worst,
                     std::abs(flycatcher_height(cdouble(0.0, 0.5)).height - 1.0));
    std::mt19937 gen(67890);
    std::uniform_real_distribution<double> ur(-2.0, 2.0);
    std::uniform_real_distribution<double> uy(std::log(1e-3), std::log(10.0));
    for (int k = 0; k < 10000; ++k) {
      const cdouble tau(ur(gen), std::exp(uy(gen)));
      const double bound = 0.5 + 0.5 / tau.imag();
      const int h = flycatcher_height(tau).height;
      worst = std::max(worst, 2.0 * std::max(0.0, h - bound));
    }
    for (double y : {1e-2, 1e-3, 1e-4}) {
      const double mean = average_height(y);
      const double law = std::log(1.0 / y) * std::log(1.0 / y) / (kPi * kPi);
      worst = std::max(worst, std::abs(mean - law) / (3.0 * std::log(1.0 / y)));
    }
    return worst;
  });
}

// 11. expand_boundary(f_{0.7}, 10) against the biorthogonal evaluators, and
// the fast contour path for a_n against the extraction path.
CheckResult check_expansion(const Context& cx) {
  return timed(11, "boundary expansion vs biorthogonal system (normalized)", 1.0, [&] {
    const auto f = BoundaryFunction::cauchy(0.7);
    const auto c = expand_boundary(f, 10, cx.tb);
    double worst = 0.0;
    for (int n = 1; n <= 10; ++n) {
      worst = std::max(worst,
                       std::abs(c.get_a(n) - cx.bt.an_eval(n, 0.7)) / 1e-6);
      worst = std::max(worst,
                       std::abs(c.get_b(n) - cx.bt.bn_eval(n, 0.7)) / 1e-6);
      const cdouble fast = expand_fast_positive(cx.bt, f, n);
      worst = std::max(worst, std::abs(fast - c.get_a(n)) / 1e-7);
    }
    return worst;
  });
}

// 12. Klein-Gordon interpolation with alpha_2 = 1, beta_3 = 1: fast lattice
// path at 1e-7, direct oscillatory quadrature at 1e-3 (normalized).
CheckResult check_kg_interpolation(const Context& cx) {
  return timed(12, "Klein-Gordon interpolation (normalized)", 1.0, [&] {
    const auto w = kg_interpolate(cx.bt, {{2, cdouble(1.0)}}, {{3, cdouble(1.0)}});
    double worst = 0.0;
    worst = std::max(worst, std::abs(w.lattice_x(2) - 1.0) / 1e-7);
    worst = std::max(worst, std::abs(w.lattice_x(1)) / 1e-7);
    worst = std::max(worst, std::abs(w.lattice_y(3) - 1.0) / 1e-7);
    worst = std::max(worst, std::abs(w.lattice_y(1)) / 1e-7);
    const double X = 1e4;
    worst = std::max(worst, std::abs(kg_eval(w, 2.0 * kPi, 0.0, X).value - 1.0) / 1e-3);
    worst = std::max(worst, std::abs(kg_eval(w, kPi, 0.0, X).value) / 1e-3);
    worst = std::max(worst, std::abs(kg_eval(w, 0.0, 3.0 * kPi, X).value - 1.0) / 1e-3);
    worst = std::max(worst, std::abs(kg_eval(w, 0.0, kPi, X).value) / 1e-3);
    return worst;
  });
}

// 13. Transfer operators: the integral-preservation identity for T_0 and the
// closed-form boundary value T_0[1](1^-) = pi^2/4 - 1.
CheckResult check_transfer(const Context&) {
  return timed(13, "transfer operator identities", 1e-6, [&] {
    const auto one = GridFunction::from_callable(
        [](double) { return cdouble(1.0); }, 257);
    const auto lim = transfer_apply(TransferKind::t_k, 0.0, one, 1.0 - 1e-9, 1000000);
    double worst = std::abs(lim.value - (kPi * kPi / 4.0 - 1.0));

    const auto f = GridFunction::from_callable(
        [](double t) { return cdouble(1.0 - t * t); }, 4097);
    const GaussRule<double> rule = gauss_legendre<double>(24);
    const cdouble integral = gl_integrate(
        rule,
        [&](double t) {
          return transfer_apply(TransferKind::t_k, 0.0, f, t, 2000000).value;
        },
        -1.0, 1.0);
    return std::max(worst, std::abs(integral - 4.0 / 3.0));
  });
}

// 14. Skew conversion roundtrips on random 50-term data plus the exponential
// constant rule a0 = 16^{omega1} a~0 (normalized: roundtrips at 1e-9, the
// constant rule at 1e-12).
CheckResult check_skew(const Context& cx) {
  return timed(14, "skew conversion roundtrips (normalized)", 1.0, [&] {
    std::mt19937 gen(24680);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    HfsCoefficients c;
    c.a0 = cdouble(u(gen), u(gen));
    for (int n = 1; n <= 50; ++n) {
      c.a[n] = cdouble(u(gen), u(gen));
      c.b[n] = cdouble(u(gen), u(gen));
    }
    auto dist = [&](const HfsCoefficients& x, const HfsCoefficients& y) {
      double d = std::abs(x.a0 - y.a0);
      for (int n = 1; n <= 50; ++n)
        d = std::max({d, std::abs(x.get_a(n) - y.get_a(n)),
                      std::abs(x.get_b(n) - y.get_b(n))});
      return d;
    };
    const auto pk = pskew_convert(c, 1.5, SkewDirection::to_skewed, cx.tb);
    const auto pb = pskew_convert(pk, 1.5, SkewDirection::to_plain, cx.tb);
    double worst = dist(pb, c) / 1e-9;
    const auto ek = expskew_convert(c, 0.3, -0.4, SkewDirection::to_skewed, cx.tb);
    const auto eb = expskew_convert(ek, 0.3, -0.4, SkewDirection::to_plain, cx.tb);
    worst = std::max(worst, dist(eb, c) / 1e-9);

    HfsCoefficients one;
    one.a0 = 1.0;
    const auto sk = expskew_convert(one, 0.3, -0.4, SkewDirection::to_skewed, cx.tb);
    worst = std::max(worst,
                     std::abs(sk.a0 - std::pow(16.0, 0.3)) / 1e-12);
    return worst;
  });
}

}  // namespace

std::string format_check_line(const CheckResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%2d  %s  %-55s residual %.3e (tol %.0e, %.1f s)",
                r.index, r.pass ? "PASS" : "FAIL", r.name.c_str(), r.residual,
                r.tolerance, r.seconds);
  return std::string(buf);
}

std::vector<CheckResult> run_verification(std::ostream* os) {
  const auto t0 = Clock::now();
  Context cx;
  if (os)
    *os << "setup: modular + biorthogonal tables built in "
        << std::chrono::duration<double>(Clock::now() - t0).count() << " s\n";

  const std::function<CheckResult(const Context&)> checks[] = {
      check_lambda_coeffs,   check_lambda_functional, check_exceptional_series,
      check_a0_value,        check_r4_values,         check_biorthogonality,
      check_poisson_reconstruction, check_symmetry,   check_summation,
      check_height,          check_expansion,         check_kg_interpolation,
      check_transfer,        check_skew};
  std::vector<CheckResult> out;
  for (const auto& chk : checks) {
    out.push_back(chk(cx));
    if (os) *os << format_check_line(out.back()) << "\n";
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return results.size() == 14;
}

}  // namespace hyperfour
