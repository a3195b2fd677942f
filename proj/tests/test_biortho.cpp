// Tests for the biorthogonal system: contour evaluators against the
// four-squares counting oracles, symmetry and decay structure, the fast
// pairing integrals, periodization sums, and the transfer fixed point.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperfour/biortho.hpp"

using namespace hyperfour;

namespace {
constexpr double kPi = 3.14159265358979323846;

const BiorthoTable& table() {
  static BiorthoTable tb(25, 64);
  return tb;
}

// Independent divisor-sum oracles for the enumeration counts (Jacobi):
// r_4(n, Z) = 8 sum_{d | n, 4 !| d} d, and the number of ways to write 4n as
// a sum of four odd squares is 16 sigma(n) for odd n and 0 for even n (a sum
// of four odd squares is always 4 mod 8).
long sigma(int n) {
  long s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}
long r4_integers_oracle(int n) {
  long s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0 && d % 4 != 0) s += d;
  return 8 * s;
}
}  // namespace

TEST_CASE("four-squares counts") {
  CHECK(r4_count(1, Lattice::integers) == 8);
  CHECK(r4_count(2, Lattice::integers) == 24);
  CHECK(r4_count(1, Lattice::half_integers) == 16);
  for (int n = 1; n <= 12; ++n) {
    CHECK(r4_count(n, Lattice::integers) == r4_integers_oracle(n));
    CHECK(r4_count(n, Lattice::half_integers) == (n % 2 ? 16 * sigma(n) : 0));
  }
}

TEST_CASE("A_0: value, symmetry, positivity") {
  const auto& tb = table();
  CHECK(std::abs(tb.a0_eval(0.0) - 4.0 / (kPi * kPi) * std::log(2.0)) < 1e-9);
  CHECK(std::abs(tb.a0_eval(5.0) - tb.a0_eval(-0.2) / 25.0) < 1e-10);
  CHECK(std::abs(tb.a0_eval(1.3) - tb.a0_eval(-1.3)) < 1e-12);
  CHECK(tb.a0_eval(17.3) > 0.0);
}

TEST_CASE("A_n(0) and A_n(0)+B_n(0) against the counting oracles") {
  const auto& tb = table();
  for (int n = 1; n <= 10; ++n) {
    const double an0 = r4_count(n, Lattice::half_integers) / (2.0 * kPi * kPi * n);
    const double abn0 = r4_count(n, Lattice::integers) / (2.0 * kPi * kPi * n);
    CHECK(std::abs(tb.an_eval(n, 0.0) - an0) < 1e-8);
    CHECK(std::abs(tb.an_eval(n, 0.0) + tb.bn_eval(n, 0.0) - abn0) < 1e-8);
  }
}

TEST_CASE("inversion and conjugation symmetry") {
  const auto& tb = table();
  for (int n = 1; n <= 8; ++n)
    for (double x : {0.3, -0.3, 1.0, -1.0, 2.5, -2.5}) {
      CHECK(std::abs(tb.bn_eval(n, x) - tb.an_eval(n, -1.0 / x) / (x * x)) < 1e-8);
      CHECK(std::abs(tb.an_eval(-n, x) - std::conj(tb.an_eval(n, x))) == 0.0);
      CHECK(std::abs(tb.bn_eval(-n, x) - std::conj(tb.bn_eval(n, x))) == 0.0);
    }
  CHECK(std::abs(tb.bn_eval(3, 1.0) - tb.an_eval(3, -1.0)) < 1e-8);
}

TEST_CASE("decay envelope") {
  const auto& tb = table();
  double rmin = 1e300, rmax = 0.0;
  for (int n = 1; n <= 8; ++n) {
    double env = 0.0;
    for (double x = -50.0; x <= 50.0; x += 1.0)
      env = std::max(env, std::abs(tb.an_eval(n, x)) * (1.0 + x * x));
    const double lg = std::log(n + 2.0);
    const double ratio = env / ((n + 1.0) * lg * lg);
    rmin = std::min(rmin, ratio);
    rmax = std::max(rmax, ratio);
  }
  CHECK(rmax < 10.0 * rmin);  // the fitted constant is uniform in n
}

TEST_CASE("fast pairings") {
  const auto& tb = table();
  for (int n = 1; n <= 8; ++n)
    for (int m = 1; m <= 8; ++m) {
      const cdouble v = tb.pairing_a(n, m).value;
      CHECK(std::abs(v - (m == n ? 1.0 : 0.0)) < 1e-7);
    }
  CHECK(std::abs(tb.pairing_a(3, 3).value - 1.0) < 1e-7);
  CHECK(std::abs(tb.pairing_a(3, 5).value) < 1e-7);
  CHECK(std::abs(tb.pairing_a(2, -4).value) == 0.0);
  // Negative-index symmetry: <A_{-n}, e_{-m}> = conj <A_n, e_m>.
  CHECK(std::abs(tb.pairing_a(-3, -3).value - 1.0) < 1e-7);
  CHECK(std::abs(tb.pairing_a(-2, 4).value) == 0.0);

  // int B_n e^{i pi m t} dt vanishes for every m: exactly for m <= 0, up to
  // quadrature for m > 0.
  CHECK(std::abs(tb.pairing_b(2, 0)) == 0.0);
  CHECK(std::abs(tb.pairing_b(2, -3)) == 0.0);
  for (int m = 1; m <= 6; ++m) CHECK(std::abs(tb.pairing_b(2, m)) < 1e-7);
  CHECK(std::abs(tb.pairing_b(5, 3)) < 1e-7);
}

TEST_CASE("pairing cross-check path") {
  const auto& tb = table();
  const BiorthoPairing p = tb.pairing_a(1, 1, true, 200.0);
  CHECK(std::abs(p.value - 1.0) < 1e-7);
  CHECK(p.crosscheck_tail > 0.0);
  CHECK(p.crosscheck_residual < p.crosscheck_tail + 1e-3);
  const BiorthoPairing z = tb.pairing_a(2, 3, true, 200.0);
  CHECK(std::abs(z.value) < 1e-7);
}

TEST_CASE("periodization sums") {
  const auto& tb = table();
  const long J = 5000;
  using W = BiorthoTable::Which;

  const auto s0 = tb.periodization_sum(W::A0, 0, 0.3, J);
  CHECK(std::abs(s0.value - 0.5) < 1e-3);
  CHECK(s0.tail_bound < 1e-3);

  const auto s1 = tb.periodization_sum(W::A, 1, 0.0, J);
  CHECK(std::abs(s1.value - 0.5) < 1e-3);

  const auto s2 = tb.periodization_sum(W::A, 2, 0.3, J);
  CHECK(std::abs(s2.value - 0.5 * std::exp(cdouble(0.0, -0.6 * kPi))) < 1e-3);

  const auto sb = tb.periodization_sum(W::B, 2, 0.1, J);
  CHECK(std::abs(sb.value) < 1e-3);

  // Conjugate pair.
  const auto sm = tb.periodization_sum(W::A, -2, 0.3, J);
  CHECK(std::abs(sm.value - std::conj(s2.value)) < 1e-12);

  CHECK_THROWS_AS(tb.periodization_sum(W::A, 1, 0.0, 5), invalid_input_error);
}

TEST_CASE("A_n^+/A_n^- and the transfer fixed point") {
  const auto& tb = table();
  const auto [p1, m1] = tb.aplus_aminus(1, 0.0);
  CHECK(std::abs(p1 - 4.0 / (kPi * kPi)) < 1e-8);

  // Anti-symmetry of A_n^- under inversion at x = 0.5.
  const auto [p2a, m2a] = tb.aplus_aminus(2, 0.5);
  const auto [p2b, m2b] = tb.aplus_aminus(2, -2.0);
  CHECK(std::abs(m2a + m2b / (0.5 * 0.5)) < 1e-8);
  CHECK(std::abs(p2a - p2b / (0.5 * 0.5)) < 1e-8);

  // (I + T_0)[A_2^+](0.3) = e^{-0.6 pi i}/2 with T_0 summed directly.
  const double t = 0.3;
  cdouble acc = tb.aplus_aminus(2, t).first;
  for (long j = -2000; j <= 2000; ++j) {
    if (j == 0) continue;
    const double d = 2.0 * j - t;
    acc += tb.aplus_aminus(2, 1.0 / d).first / (d * d);
  }
  CHECK(std::abs(acc - 0.5 * std::exp(cdouble(0.0, -kPi * t * 2.0))) < 1e-3);
}

TEST_CASE("Poisson reconstruction") {
  const auto& tb = table();
  for (cdouble tau : {cdouble(0.0, 1.0), cdouble(0.3, 0.8)}) {
    for (double x : {0.0, 0.7, 3.0}) {
      const double P = tau.imag() / (kPi * std::norm(x - tau));
      cdouble rec = tb.a0_eval(x);
      for (int n = 1; n <= 25; ++n) {
        const cdouble term = tb.an_eval(n, x) * std::exp(cdouble(0.0, kPi * n) * tau) +
                             tb.bn_eval(n, x) * std::exp(cdouble(0.0, -kPi * n) / tau);
        rec += 2.0 * term.real();
      }
      CHECK(std::abs(rec - P) < 1e-6);
    }
  }
}

TEST_CASE("input validation") {
  const auto& tb = table();
  CHECK_THROWS_AS(tb.an_eval(0, 1.0), invalid_input_error);
  CHECK_THROWS_AS(tb.an_eval(26, 1.0), invalid_input_error);
  CHECK_THROWS_AS(tb.pairing_a(0, 1), invalid_input_error);
  CHECK_THROWS_AS(r4_count(0, Lattice::integers), invalid_input_error);
  CHECK_THROWS_AS(BiorthoTable(0), invalid_input_error);
}
