// Tests for the boundary-to-coefficients engine: the lambda-Poisson solver,
// the orbit harmonic extension, coefficient extraction, and the full
// expansion pipeline cross-checked against the biorthogonal system.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperfour/expand.hpp"

using namespace hyperfour;

namespace {
constexpr double kPi = 3.14159265358979323846;
const cdouble I(0.0, 1.0);

const ModularTablesD& mtab() {
  static ModularTablesD tb = build_tables<double>(64);
  return tb;
}
const BiorthoTable& btab() {
  static BiorthoTable bt(10, 64);
  return bt;
}
}  // namespace

TEST_CASE("Poisson solve reproduces constants and stays real-linear") {
  HarmonicEvaluator ev(BoundaryFunction::constant(1.0), mtab());
  for (cdouble tau : {cdouble(0.0, 2.0), cdouble(0.3, 1.5), cdouble(5.7, 2.0),
                      cdouble(-0.9, 1.1)}) {
    const cdouble v = poisson_lambda_solve(ev, tau);
    CHECK(std::abs(v - 1.0) < 1e-9);
    CHECK(std::abs(v.imag()) < 1e-12);  // real data -> real output
  }
  CHECK_THROWS_AS(poisson_lambda_solve(ev, cdouble(0.0, 0.5)), domain_error);
  CHECK_THROWS_AS(poisson_lambda_solve(ev, cdouble(2.3, 0.2)), domain_error);
}

TEST_CASE("Poisson solve of the Cauchy kernel matches the coefficient series") {
  HarmonicEvaluator ev(BoundaryFunction::cauchy(0.0), mtab());
  const cdouble h2i = poisson_lambda_solve(ev, cdouble(0.0, 2.0));
  // h_x has harmonic coefficients c_n = A_n(x), c_{-n} = B_n(x), while the
  // constant is c_0 = a_0(f_x) with A_0(x) = 2 Re a_0(f_x); at x = 0 the
  // conjugation symmetry makes a_0 real, so c_0 = A_0(0)/2.  At tau = 2i
  // both exponentials collapse to e^{-2 pi n}.
  cdouble rec = 0.5 * btab().a0_eval(0.0);
  for (int n = 1; n <= 10; ++n)
    rec += (btab().an_eval(n, 0.0) + btab().bn_eval(n, 0.0)) * std::exp(-2.0 * kPi * n);
  CHECK(std::abs(h2i - rec) < 1e-6);
}

TEST_CASE("orbit extension") {
  HarmonicEvaluator ev(BoundaryFunction::cauchy(0.7), mtab());

  // N = 0 degenerates to the Poisson solve.
  CHECK(std::abs(extend_harmonic(ev, cdouble(0.2, 1.4)) -
                 poisson_lambda_solve(ev, cdouble(0.2, 1.4))) == 0.0);

  // N = 1 instance: h(0.5i) = -h(2i) + f_sym(0.5i).
  const cdouble lhs = extend_harmonic(ev, cdouble(0.0, 0.5));
  const cdouble rhs = -poisson_lambda_solve(ev, cdouble(0.0, 2.0)) +
                      ev.f_sym(cdouble(0.0, 0.5));
  CHECK(std::abs(lhs - rhs) < 1e-12);

  // 2-periodicity deep in the strip.
  const cdouble tau(0.4, 0.3);
  CHECK(std::abs(extend_harmonic(ev, tau + 2.0) - extend_harmonic(ev, tau)) < 1e-8);

  // h equals the boundary data on T_+ ...
  for (int k = 1; k <= 20; ++k) {
    const double th = kPi * k / 21.0;
    const cdouble eta = std::exp(I * th);
    CHECK(std::abs(extend_harmonic(ev, eta) - ev.boundary().eval(eta)) < 1e-7);
  }
  // ... and approaches it continuously from outside.
  const cdouble eta = std::exp(I * 1.0);
  CHECK(std::abs(extend_harmonic(ev, 1.002 * eta) - ev.boundary().eval(eta)) < 5e-3);
}

TEST_CASE("coefficient extraction") {
  // h(tau) = e^{i pi tau}: c_1 = 1 at any height.
  auto h1 = [](cdouble tau) { return std::exp(cdouble(0.0, kPi) * tau); };
  CHECK(std::abs(extract_coeff(h1, 1, 2.0) - 1.0) < 1e-9);
  CHECK(std::abs(extract_coeff(h1, 1, 0.7) - 1.0) < 1e-12);
  CHECK(std::abs(extract_coeff(h1, 2, 0.7)) < 1e-12);
  CHECK(std::abs(extract_coeff(h1, -1, 0.7)) < 1e-12);

  // h(tau) = e^{-i pi conj(tau)}: c_{-1} = 1.
  auto hm1 = [](cdouble tau) { return std::exp(cdouble(0.0, -kPi) * std::conj(tau)); };
  CHECK(std::abs(extract_coeff(hm1, -1, 0.7) - 1.0) < 1e-12);
  CHECK(std::abs(extract_coeff(hm1, 1, 0.7)) < 1e-12);

  // h = lambda: the nome coefficients 16, -128, 704.
  auto hl = [](cdouble tau) { return lambda_eval(mtab(), tau); };
  CHECK(std::abs(extract_coeff(hl, 1, 2.0) - 16.0) < 1e-9);
  CHECK(std::abs(extract_coeff(hl, 2, 2.0) + 128.0) < 1e-8);
  CHECK(std::abs(extract_coeff(hl, 3, 2.0) - 704.0) < 1e-6);
  CHECK(std::abs(extract_coeff(hl, 0, 2.0)) < 1e-10);

  CHECK_THROWS_AS(extract_coeff(h1, 1, -1.0), invalid_input_error);
}

TEST_CASE("extraction height invariance") {
  HarmonicEvaluator ev(BoundaryFunction::cauchy(0.7), mtab());
  // Quad fixed-table path (both heights stay in Omega_0), up to n = 10 where
  // the noise amplification is e^{20 pi}.
  for (int n : {1, -1, 2, 10, -10})
    CHECK(std::abs(extract_coeff(ev, n, 2.0) - extract_coeff(ev, n, 1.5)) < 1e-7);
  // Double orbit path at a height below 1 (small n only).
  CHECK(std::abs(extract_coeff(ev, 1, 2.0) - extract_coeff(ev, 1, 0.8)) < 1e-5);
}

TEST_CASE("expand_boundary: trivial data") {
  double res = 0.0;
  auto c1 = expand_boundary(BoundaryFunction::constant(1.0), 3, mtab(), &res);
  CHECK(std::abs(c1.a0 - 1.0) < 1e-8);
  for (int n = 1; n <= 3; ++n) {
    CHECK(std::abs(c1.get_a(n)) < 1e-8);
    CHECK(std::abs(c1.get_b(n)) < 1e-8);
  }
  CHECK(res < 1e-7);

  auto ce = expand_boundary(BoundaryFunction::pure_exponential(1), 3, mtab());
  CHECK(std::abs(ce.get_a(1) - 1.0) < 1e-8);
  CHECK(std::abs(ce.a0) < 1e-8);
  CHECK(std::abs(ce.get_a(2)) < 1e-8);
  CHECK(std::abs(ce.get_b(1)) < 1e-8);
}

TEST_CASE("expand_boundary: b-type exponential lands in the b map") {
  // Boundary data e^{-i pi / tau} equals e^{-i pi conj(eta)} on T_+, whose
  // harmonic 2-periodic extension is e^{-i pi conj(tau)}; the pipeline must
  // relabel its c_{-1} into b_1.
  BoundaryFunction f;
  f.kind = BoundaryFunction::Kind::cauchy;
  f.interior_ok = true;
  f.eval = [](cdouble tau) { return std::exp(cdouble(0.0, -kPi) / tau); };
  auto c = expand_boundary(f, 3, mtab());
  CHECK(std::abs(c.get_b(1) - 1.0) < 1e-8);
  CHECK(std::abs(c.get_a(1)) < 1e-8);
  CHECK(std::abs(c.a0) < 1e-8);
}

TEST_CASE("expand_boundary: Cauchy kernel against the biorthogonal system") {
  auto c = expand_boundary(BoundaryFunction::cauchy(0.7), 10, mtab());
  for (int n = 1; n <= 10; ++n) {
    CHECK(std::abs(c.get_a(n) - btab().an_eval(n, 0.7)) < 1e-6);
    CHECK(std::abs(c.get_b(n) - btab().bn_eval(n, 0.7)) < 1e-6);
  }
  // A_0(x) = 2 Re a_0(f_x); the extracted a0 itself is complex.
  CHECK(std::abs(2.0 * c.a0.real() - btab().a0_eval(0.7)) < 1e-6);
}

TEST_CASE("fast positive-coefficient path") {
  const auto f0 = BoundaryFunction::cauchy(0.0);
  for (int n = 1; n <= 8; ++n) {
    const double oracle = r4_count(n, Lattice::half_integers) / (2.0 * kPi * kPi * n);
    CHECK(std::abs(expand_fast_positive(btab(), f0, n) - oracle) < 1e-7);
  }

  const auto one = BoundaryFunction::constant(1.0);
  for (int n = 1; n <= 6; ++n)
    CHECK(std::abs(expand_fast_positive(btab(), one, n)) < 1e-9);

  const auto e1 = BoundaryFunction::pure_exponential(1);
  for (int n = 1; n <= 6; ++n)
    CHECK(std::abs(expand_fast_positive(btab(), e1, n) - (n == 1 ? 1.0 : 0.0)) < 1e-7);

  // Consistency gate.
  const cdouble good = btab().an_eval(2, 0.0);
  CHECK(std::abs(expand_fast_positive(btab(), f0, 2, &good) - good) < 1e-7);
  const cdouble bad = good + 1.0;
  CHECK_THROWS_AS(expand_fast_positive(btab(), f0, 2, &bad), consistency_error);
}

TEST_CASE("sampled boundary data") {
  // Sample f_{0.7} on a fine theta grid and expand with s pinned to 2.
  std::vector<double> th;
  std::vector<cdouble> vals;
  const auto fx = BoundaryFunction::cauchy(0.7);
  for (int k = 0; k <= 2000; ++k) {
    const double t = 0.01 + (kPi - 0.02) * k / 2000.0;
    th.push_back(t);
    vals.push_back(fx.eval(std::exp(I * t)));
  }
  auto f = BoundaryFunction::sampled(th, vals);
  CHECK(f.sample_error < 1e-8);
  const cdouble probe = std::exp(I * 1.234);
  CHECK(std::abs(f.eval(probe) - fx.eval(probe)) < 1e-9);

  auto c = expand_boundary(f, 2, mtab());
  CHECK(std::abs(c.get_a(1) - btab().an_eval(1, 0.7)) < 1e-6);
  CHECK(std::abs(c.get_b(1) - btab().bn_eval(1, 0.7)) < 1e-6);

  // No interior evaluator: the orbit extension below Omega_0 must refuse.
  HarmonicEvaluator ev(f, mtab());
  CHECK_THROWS_AS(extend_harmonic(ev, cdouble(0.0, 0.5)), invalid_input_error);
  // The high-n fast path needs the quad twin.
  CHECK_THROWS_AS(expand_fast_positive(btab(), f, 5), invalid_input_error);

  CHECK_THROWS_AS(BoundaryFunction::sampled({0.1, 0.2}, {cdouble(0), cdouble(0)}),
                  invalid_input_error);
}
