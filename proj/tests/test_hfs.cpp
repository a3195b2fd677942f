// Unit tests for the hyperbolic Fourier series object, the exceptional null
// series, the Schwarz transform, the skew conversions, and the JSON/CSV
// plumbing.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperfour/hfs.hpp"
#include "hyperfour/io.hpp"

using namespace hyperfour;

namespace {
constexpr double kPi = 3.14159265358979323846;
const cdouble I(0.0, 1.0);

std::mt19937 rng(42);

HfsCoefficients random_two_sided(int support) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HfsCoefficients c;
  c.sided = Sided::two_sided_harmonic;
  c.a0 = cdouble(u(rng), u(rng));
  for (int n = -support; n <= support; ++n) {
    if (n == 0) continue;
    c.a[n] = cdouble(u(rng), u(rng));
    c.b[n] = cdouble(u(rng), u(rng));
  }
  return c;
}

}  // namespace

TEST_CASE("evaluation basics") {
  HfsCoefficients c;
  c.a0 = 5.0;
  CHECK(std::abs(hfs_eval(c, cdouble(0.3, 0.7)) - 5.0) == 0.0);
  CHECK_THROWS_AS(hfs_eval(c, cdouble(0.0, -1.0)), domain_error);

  HfsCoefficients c1;
  c1.a[1] = 1.0;
  CHECK(std::abs(hfs_eval(c1, I) - std::exp(-kPi)) < 1e-15);
}

TEST_CASE("linearity and conjugate-flip symmetry") {
  for (int rep = 0; rep < 5; ++rep) {
    auto c1 = random_two_sided(6), c2 = random_two_sided(6);
    const cdouble tau(0.4, 1.2);
    // Linearity.
    HfsCoefficients sum = c1;
    sum.a0 += c2.a0;
    for (const auto& [n, v] : c2.a) sum.a[n] += v;
    for (const auto& [n, v] : c2.b) sum.b[n] += v;
    CHECK(std::abs(hfs_eval(sum, tau) - hfs_eval(c1, tau) - hfs_eval(c2, tau)) < 1e-13);

    // a_n <-> conj(a_{-n}), b_n <-> conj(b_{-n}) conjugates the value.
    HfsCoefficients flip = c1;
    flip.a0 = std::conj(c1.a0);
    for (auto& [n, v] : flip.a) v = std::conj(c1.a.at(-n));
    for (auto& [n, v] : flip.b) v = std::conj(c1.b.at(-n));
    CHECK(std::abs(hfs_eval(c1, tau) - std::conj(hfs_eval(flip, tau))) < 1e-13);
  }
}

TEST_CASE("exceptional null series") {
  auto tb = build_tables<double>(300);

  // P(w) = w: the lambda identity -1 + lambda(tau) + lambda(-1/tau) = 0.
  auto c = exceptional_series({0.0, 1.0}, 200, tb);
  CHECK(std::abs(c.a0 + 1.0) == 0.0);
  CHECK(std::abs(c.a.at(1) - 16.0) < 1e-9);
  CHECK(std::abs(c.a.at(2) + 128.0) < 1e-8);
  CHECK(std::abs(c.a.at(3) - 704.0) < 1e-7);
  CHECK(std::abs(c.a.at(2) - c.b.at(2)) < 1e-10);
  CHECK(std::abs(hfs_eval(c, I)) < 1e-8);
  CHECK(std::abs(hfs_eval(c, cdouble(0.2, 1.1))) < 1e-8);

  // P = 0.
  auto z = exceptional_series({}, 100, tb);
  CHECK(std::abs(z.a0) == 0.0);
  CHECK(z.a.empty());
  CHECK(z.b.empty());

  // P(w) = w^2 at N = 300.
  auto c2 = exceptional_series({0.0, 0.0, 1.0}, 300, tb);
  CHECK(std::abs(hfs_eval(c2, cdouble(0.2, 1.1))) < 1e-6);

  // Null at random heights >= 0.8.
  std::uniform_real_distribution<double> ux(-0.9, 0.9), uy(0.8, 2.5);
  for (int k = 0; k < 10; ++k)
    CHECK(std::abs(hfs_eval(c2, cdouble(ux(rng), uy(rng)))) < 1e-6);

  CHECK_THROWS_AS(exceptional_series({1.0, 1.0}, 100, tb), invalid_input_error);
  CHECK_THROWS_AS(exceptional_series({0.0, 0.0, 0.0, 1.0}, 10, tb), invalid_input_error);
}

TEST_CASE("schwarz transform") {
  HfsCoefficients c;
  c.sided = Sided::two_sided_harmonic;
  c.a0 = cdouble(1.5, -0.5);
  c.a[-3] = 2.0;
  auto s = schwarz_transform(c);
  CHECK(s.sided == Sided::one_sided_holomorphic);
  CHECK(std::abs(s.a0 - c.a0) == 0.0);
  CHECK(std::abs(s.b.at(3) - 2.0) == 0.0);
  CHECK(s.a.empty());

  // On the semicircle the transform agrees with the input.
  HfsCoefficients h = random_two_sided(5);
  h.b.clear();
  auto sh = schwarz_transform(h);
  for (double th : {2.0, 0.7, 1.3, 2.9}) {
    const cdouble eta = std::exp(I * th);
    CHECK(std::abs(hfs_eval(sh, eta) - hfs_eval(h, eta)) < 1e-12);
  }

  HfsCoefficients sk = h;
  sk.skew.type = Skew::Type::power;
  sk.skew.beta = 1.0;
  CHECK_THROWS_AS(schwarz_transform(sk), invalid_input_error);
}

namespace {

HfsCoefficients random_one_sided(int support) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HfsCoefficients c;
  c.a0 = cdouble(u(rng), u(rng));
  for (int n = 1; n <= support; ++n) {
    c.a[n] = cdouble(u(rng), u(rng));
    c.b[n] = cdouble(u(rng), u(rng));
  }
  return c;
}

double coeff_dist(const HfsCoefficients& x, const HfsCoefficients& y, int support) {
  double d = std::abs(x.a0 - y.a0);
  for (int n = 1; n <= support; ++n) {
    d = std::max(d, std::abs(x.get_a(n) - y.get_a(n)));
    d = std::max(d, std::abs(x.get_b(n) - y.get_b(n)));
  }
  return d;
}

}  // namespace

TEST_CASE("power skew conversion") {
  auto tb = build_tables<double>(64);
  auto c = random_one_sided(50);

  // beta = 0 is the identity.
  auto id = pskew_convert(c, 0.0, SkewDirection::to_skewed, tb);
  CHECK(coeff_dist(id, c, 50) < 1e-14);

  // Roundtrip.
  auto sk = pskew_convert(c, 1.5, SkewDirection::to_skewed, tb);
  CHECK(sk.skew.type == Skew::Type::power);
  auto back = pskew_convert(sk, 1.5, SkewDirection::to_plain, tb);
  CHECK(coeff_dist(back, c, 50) < 1e-10);

  // Plain {a0 = 1} at beta = 1/2: the skewed a-coefficients are the series
  // of theta00 - 1, i.e. 2 at the perfect squares.
  HfsCoefficients one;
  one.a0 = 1.0;
  auto sk1 = pskew_convert(one, 0.5, SkewDirection::to_skewed, tb);
  CHECK(std::abs(sk1.a0 - 1.0) < 1e-14);
  CHECK(std::abs(sk1.get_a(1) - 2.0) < 1e-12);
  CHECK(std::abs(sk1.get_a(2)) < 1e-12);
  CHECK(std::abs(sk1.get_a(4) - 2.0) < 1e-12);
  CHECK(std::abs(sk1.get_a(9) - 2.0) < 1e-12);

  // Pointwise identity f = theta00^{2 beta} g.
  auto small = random_one_sided(10);
  auto sksm = pskew_convert(small, 0.8, SkewDirection::to_skewed, tb);
  for (cdouble tau : {cdouble(0.2, 1.4), cdouble(-0.6, 2.0)}) {
    const cdouble mult = std::pow(theta00_eval(tb, tau), cdouble(1.6));
    CHECK(std::abs(hfs_eval(sksm, tau) - mult * hfs_eval(small, tau)) < 1e-9);
  }
}

TEST_CASE("exponential skew conversion") {
  auto tb = build_tables<double>(64);
  auto c = random_one_sided(50);

  auto id = expskew_convert(c, 0.0, 0.0, SkewDirection::to_skewed, tb);
  CHECK(coeff_dist(id, c, 50) < 1e-13);

  HfsCoefficients one;
  one.a0 = 1.0;
  auto sk16 = expskew_convert(one, 1.0, 0.0, SkewDirection::to_skewed, tb);
  CHECK(std::abs(sk16.a0 - 16.0) < 1e-12);

  auto sk = expskew_convert(c, 0.3, -0.4, SkewDirection::to_skewed, tb);
  CHECK(sk.skew.type == Skew::Type::exponential);
  auto back = expskew_convert(sk, 0.3, -0.4, SkewDirection::to_plain, tb);
  CHECK(coeff_dist(back, c, 50) < 1e-9);

  // Pointwise identity f = lambda(tau)^{w1} lambda(-1/tau)^{w2} g.
  auto small = random_one_sided(10);
  auto sksm = expskew_convert(small, 0.3, -0.4, SkewDirection::to_skewed, tb);
  for (cdouble tau : {cdouble(0.2, 1.4), cdouble(-0.6, 2.0)}) {
    const cdouble m = std::pow(lambda_eval(tb, tau), cdouble(0.3)) *
                      std::pow(lambda_eval(tb, -1.0 / tau), cdouble(-0.4));
    CHECK(std::abs(hfs_eval(sksm, tau) - m * hfs_eval(small, tau)) < 1e-9);
  }
}

TEST_CASE("growth envelope") {
  std::vector<double> grid;
  for (double y = 0.05; y <= 1.0; y *= 1.25) grid.push_back(y);
  grid.push_back(1.0);

  HfsCoefficients flat;
  for (int n = 1; n <= 10; ++n) flat.a[n] = 1.0;
  auto r0 = growth_envelope_check(flat, 1.0, grid);
  CHECK(r0.max_ratio < 10.0);

  auto series_with = [](double k) {
    HfsCoefficients c;
    for (int n = 1; n <= 400; ++n)
      c.a[n] = std::pow(double(n), -0.75) * std::exp(2.0 * kPi * std::sqrt(k * double(n)));
    return c;
  };
  auto ok = growth_envelope_check(series_with(1.0), 1.0, grid);
  CHECK(ok.max_ratio < 50.0);
  auto bad = growth_envelope_check(series_with(2.0), 1.0, grid);
  CHECK(bad.max_ratio > 1e6);
  // ...and the violation grows toward y -> 0.
  CHECK(bad.ratios.front().second > bad.ratios.back().second);
}

TEST_CASE("harmonic split") {
  HfsCoefficients cc;
  cc.sided = Sided::two_sided_harmonic;
  cc.a0 = cdouble(2.0, 1.0);
  auto s0 = split_harmonic(cc);
  CHECK(std::abs(s0.k - cc.a0) == 0.0);
  CHECK(std::abs(hfs_eval(s0.holo, I)) == 0.0);

  HfsCoefficients c1;
  c1.sided = Sided::two_sided_harmonic;
  c1.a[1] = 1.0;
  auto s1 = split_harmonic(c1);
  CHECK(std::abs(s1.k - std::exp(-kPi)) < 1e-15);
  CHECK(std::abs(s1.holo.a0 + std::exp(-kPi)) < 1e-15);

  auto c = random_two_sided(6);
  auto sp = split_harmonic(c);
  CHECK(std::abs(hfs_eval(sp.holo, I)) < 1e-14);
  CHECK(std::abs(hfs_eval(sp.anti, I)) < 1e-14);
  std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(0.3, 2.0);
  for (int k = 0; k < 20; ++k) {
    const cdouble tau(ux(rng), uy(rng));
    const cdouble rec = hfs_eval(sp.holo, tau) + hfs_eval(sp.anti, tau) + sp.k;
    CHECK(std::abs(rec - hfs_eval(c, tau)) < 1e-13);
  }
}

TEST_CASE("JSON roundtrip") {
  auto c = random_one_sided(4);
  c.skew.type = Skew::Type::exponential;
  c.skew.omega1 = 0.25;
  c.skew.omega2 = -0.5;
  auto rt = hfs_from_json(hfs_to_json(c));
  CHECK(rt.sided == c.sided);
  CHECK(rt.skew.type == c.skew.type);
  CHECK(rt.skew.omega1 == c.skew.omega1);
  CHECK(std::abs(rt.a0 - c.a0) == 0.0);
  for (int n = 1; n <= 4; ++n) {
    CHECK(std::abs(rt.get_a(n) - c.get_a(n)) == 0.0);
    CHECK(std::abs(rt.get_b(n) - c.get_b(n)) == 0.0);
  }
  CHECK_THROWS_AS(hfs_from_json("{"), invalid_input_error);
  CHECK_THROWS_AS(hfs_from_json("{\"b\":{\"0\":[1,0]}}"), invalid_input_error);
}

TEST_CASE("grid and complex parsing") {
  auto g = parse_grid("-5:5:0.01");
  CHECK(g.size() == 1001);
  CHECK(g.front() == -5.0);
  CHECK(std::abs(g.back() - 5.0) < 1e-12);

  auto g1 = parse_grid("0:0:1");
  CHECK(g1.size() == 1);

  auto gc = parse_grid("0:1:0.3");  // clamped final point
  CHECK(gc.size() == 5);
  CHECK(gc.back() == 1.0);

  CHECK_THROWS_AS(parse_grid("1:0:0.5"), invalid_input_error);
  CHECK_THROWS_AS(parse_grid("0:1:-0.5"), invalid_input_error);
  CHECK_THROWS_AS(parse_grid("nope"), invalid_input_error);

  CHECK(parse_complex("0.3+0.8i") == cdouble(0.3, 0.8));
  CHECK(parse_complex("2i") == cdouble(0.0, 2.0));
  CHECK(parse_complex("-1.5") == cdouble(-1.5, 0.0));
  CHECK(parse_complex("0.5i") == cdouble(0.0, 0.5));
  CHECK(parse_complex("1-2i") == cdouble(1.0, -2.0));
  CHECK(parse_complex("-i+3") == cdouble(3.0, -1.0));
  CHECK_THROWS_AS(parse_complex("1+2"), invalid_input_error);
}
