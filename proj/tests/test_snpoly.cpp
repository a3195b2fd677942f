// Unit tests for the principal-part polynomials S_n and their remainders.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperfour/snpoly.hpp"

using namespace hyperfour;

TEST_CASE("S_1 and S_2 closed forms") {
  auto tb = build_tables<double>(32);
  auto s1 = sn_compute(1, tb);
  REQUIRE(s1.coeffs.size() == 1);
  CHECK(std::abs(s1.coeffs[0] - 16.0) < 1e-10);

  auto s2 = sn_compute(2, tb);
  REQUIRE(s2.coeffs.size() == 2);
  CHECK(std::abs(s2.coeffs[0] + 256.0) < 1e-8);
  CHECK(std::abs(s2.coeffs[1] - 256.0) < 1e-8);

  // Independent elimination oracle for S_2 from the first lambda-hat values:
  // 1/lambda = (1/16) q^-1 + 1/2 + ..., (1/lambda)^2 = (1/256) q^-2 + (1/16) q^-1 + ...
  auto inv = ns_inv(tb.lambda);
  auto inv2 = ns_mul(inv, inv);
  const cdouble t2 = 1.0 / inv2.coeff(-2);
  const cdouble t1 = -t2 * inv2.coeff(-1) / inv.coeff(-1);
  CHECK(std::abs(t2 - s2.coeffs[1]) < 1e-9);
  CHECK(std::abs(t1 - s2.coeffs[0]) < 1e-9);
}

TEST_CASE("coefficients are integers for n <= 12") {
  auto tb = build_tables<double>(32);
  for (int n = 1; n <= 12; ++n) {
    auto sn = sn_compute(n, tb);
    CHECK(sn.coeffs.size() == static_cast<std::size_t>(n));
    CHECK(std::abs(sn.coeffs.back()) > 0.0);  // degree exactly n
    for (const auto& c : sn.coeffs) {
      CHECK(std::abs(c.imag()) <= 1e-6 * std::max(1.0, std::abs(c)));
      CHECK(std::abs(c.real() - std::round(c.real())) <= 1e-6 * std::max(1.0, std::abs(c)));
    }
  }
}

TEST_CASE("no negative powers remain, and the system is nondegenerate") {
  auto tb = build_tables<double>(32);
  const int n = 5;
  auto sn = sn_compute(n, tb);
  auto inv = ns_inv(tb.lambda);

  auto residual_neg_part = [&](const std::vector<cdouble>& s) {
    NomeSeriesD rem(-n, std::vector<cdouble>(static_cast<std::size_t>(tb.truncation_order + n) + 1, 0.0));
    rem.coeffs[0] = 1.0;
    NomeSeriesD p = inv;
    for (int k = 1; k <= n; ++k) {
      rem = ns_sub(rem, ns_scale(p, s[static_cast<std::size_t>(k - 1)]));
      if (k < n) p = ns_mul(p, inv);
    }
    double mx = 0.0;
    for (int j = 1; j <= n; ++j) mx = std::max(mx, std::abs(rem.coeff(-j)));
    return mx;
  };

  // The computed coefficients kill the principal part...
  CHECK(residual_neg_part(sn.coeffs) < 1e-4);
  // ...and perturbing any single one reintroduces it.  The smallest response
  // is delta * 16^{-1} (the leading Laurent coefficient of 1/lambda).
  for (int k = 0; k < n; ++k) {
    auto pert = sn.coeffs;
    pert[static_cast<std::size_t>(k)] += 2e-3;
    CHECK(residual_neg_part(pert) > 1e-4);
  }
}

TEST_CASE("remainder limit and value") {
  auto tb = build_tables<double>(64);
  auto s1 = sn_compute(1, tb);
  const cdouble r10 = sn_remainder(s1, tb, cdouble(0.0, 10.0));
  const cdouble r20 = sn_remainder(s1, tb, cdouble(0.0, 20.0));
  CHECK(std::abs(r10 - r20) < 1e-10);
  CHECK(std::abs(r10 + 8.0) < 1e-6);
  // Constant term of q^-1 - 16/lambda from the series itself.
  CHECK(std::abs(s1.remainder_series.coeff(0) + 8.0) < 1e-10);
}

TEST_CASE("remainder stays bounded near the real line") {
  auto tb = build_tables<double>(64);
  for (int n : {1, 2, 3}) {
    auto sn = sn_compute(n, tb);
    for (double t = -1.0; t <= 1.0; t += 0.05) {
      const cdouble r = sn_remainder(sn, tb, cdouble(t, 0.05));
      CHECK(std::abs(r) < 1e3 * n);
    }
  }
}

TEST_CASE("cache table") {
  auto tb = build_tables<double>(40);
  SnTable<double> cache(8, tb);
  CHECK(cache.n_max() == 8);
  CHECK(std::abs(cache.at(1).coeffs[0] - 16.0) < 1e-10);
  CHECK_THROWS_AS(cache.at(9), invalid_input_error);
  CHECK_THROWS_AS(sn_compute(33, tb), invalid_series_error);
}
