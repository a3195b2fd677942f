#include "hyperfour/halfplane.hpp"

#include <cmath>

namespace hyperfour {

namespace {

void check_h(HPoint tau, const char* who) {
  if (!(tau.imag() > 0.0)) throw domain_error(std::string(who) + ": Im tau <= 0");
}

}  // namespace

HPoint mod2(HPoint tau) {
  const double k = std::floor((tau.real() + 1.0) / 2.0);
  return tau - 2.0 * k;
}

HPoint apply_map(MapKind m, HPoint tau) {
  check_h(tau, "apply_map");
  switch (m) {
    case MapKind::S:
      return -1.0 / tau;
    case MapKind::T:
      return tau + 1.0;
    case MapKind::T2:
      return tau + 2.0;
    case MapKind::Sstar:
      return 1.0 / std::conj(tau);
    case MapKind::Rstar:
      return -std::conj(tau);
    case MapKind::Mod2:
      return mod2(tau);
  }
  throw invalid_input_error("apply_map: unknown map");
}

Region in_DTheta(HPoint tau) {
  check_h(tau, "in_DTheta");
  const double d_strip = 1.0 - std::abs(tau.real());  // > 0 inside the strip
  const double d_circle = std::abs(tau) - 1.0;        // > 0 outside the disk
  if (d_strip > kBoundaryTol && d_circle > kBoundaryTol) return Region::interior;
  if (d_strip >= -kBoundaryTol && d_circle >= -kBoundaryTol) return Region::boundary;
  return Region::outside;
}

FlycatcherResult flycatcher_height(HPoint tau, bool use_star) {
  check_h(tau, "flycatcher_height");
  const long cap = static_cast<long>(std::ceil(1.0 + 1.0 / tau.imag()));
  FlycatcherResult res;
  HPoint t = mod2(tau);
  res.orbit.push_back(t);
  double prev_im = 0.0;
  while (!in_closed_DTheta(t)) {
    if (++res.height > cap)
      throw algorithm_error("flycatcher_height: exceeded the theoretical step cap");
    prev_im = t.imag();
    t = use_star ? mod2(1.0 / std::conj(t)) : mod2(-1.0 / t);
    if (!(t.imag() > prev_im))
      throw algorithm_error("flycatcher_height: orbit Im failed to increase");
    res.orbit.push_back(t);
  }
  res.is_mesh = (in_DTheta(t) == Region::boundary);
  return res;
}

HPoint ThetaWord::apply(HPoint tau) const {
  const cdouble a(static_cast<double>(m[0])), b(static_cast<double>(m[1]));
  const cdouble c(static_cast<double>(m[2])), d(static_cast<double>(m[3]));
  return (a * tau + b) / (c * tau + d);
}

ThetaWord ThetaWord::inverse() const {
  ThetaWord r;
  r.m = {m[3], -m[1], -m[2], m[0]};
  for (std::size_t i = letters.size(); i-- > 0;) {
    Letter l = letters[i];
    l.exponent = (l.base == 'S') ? l.exponent : -l.exponent;
    r.letters.push_back(l);
  }
  return r;
}

bool ThetaWord::is_theta_group() const {
  const long long a = m[0] & 1, b = m[1] & 1, c = m[2] & 1, d = m[3] & 1;
  return (a == 1 && b == 0 && c == 0 && d == 1) ||
         (a == 0 && b == 1 && c == 1 && d == 0);
}

namespace {

// r = r * other (2x2 integer matrices).
void mat_mul(std::array<long long, 4>& r, const std::array<long long, 4>& o) {
  const long long a = r[0] * o[0] + r[1] * o[2];
  const long long b = r[0] * o[1] + r[1] * o[3];
  const long long c = r[2] * o[0] + r[3] * o[2];
  const long long d = r[2] * o[1] + r[3] * o[3];
  r = {a, b, c, d};
}

void push_t_shift(ThetaWord& w, long two_k) {
  if (two_k == 0) return;
  mat_mul(w.m, {1, two_k, 0, 1});
  w.letters.push_back({'T', two_k});
}

void push_s(ThetaWord& w) {
  mat_mul(w.m, {0, -1, 1, 0});
  w.letters.push_back({'S', 1});
}

}  // namespace

TileReduction reduce_to_tile(HPoint tau) {
  check_h(tau, "reduce_to_tile");
  const long cap = static_cast<long>(std::ceil(1.0 + 1.0 / tau.imag()));
  TileReduction res;
  // tau = T^{2k} (tau'), then each g_2 step tau' = S(T^{2k'}(g_2 tau'))
  // (S is an involution in PSL(2,Z)), so gamma accumulates left-to-right.
  HPoint t = tau;
  {
    const long two_k = 2 * static_cast<long>(std::floor((t.real() + 1.0) / 2.0));
    push_t_shift(res.gamma, two_k);
    t -= static_cast<double>(two_k);
  }
  long steps = 0;
  while (!in_closed_DTheta(t)) {
    if (++steps > cap)
      throw algorithm_error("reduce_to_tile: exceeded the theoretical step cap");
    push_s(res.gamma);
    t = -1.0 / t;
    const long two_k = 2 * static_cast<long>(std::floor((t.real() + 1.0) / 2.0));
    push_t_shift(res.gamma, two_k);
    t -= static_cast<double>(two_k);
  }
  res.tau0 = t;
  res.is_mesh = (in_DTheta(t) == Region::boundary);
  return res;
}

double big_M(HPoint tau) {
  check_h(tau, "big_M");
  return std::max(1.0, std::norm(tau)) / tau.imag();
}

double average_height(double y, int nt) {
  if (!(y > 0.0)) throw domain_error("average_height: y <= 0");
  if (nt < 2) throw invalid_input_error("average_height: nt < 2");
  double sum = 0.0;
  for (int j = 0; j < nt; ++j) {
    const double t = -1.0 + 2.0 * (j + 0.5) / nt;
    sum += flycatcher_height(HPoint(t, y)).height;
  }
  return sum / nt;
}

}  // namespace hyperfour
