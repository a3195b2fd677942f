#include "hyperfour/biortho.hpp"

#include <algorithm>
#include <cmath>

#include "hyperfour/quadrature.hpp"

namespace hyperfour {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
const cdouble kI(0.0, 1.0);

bool is_odd_square_root(long rem, long* root) {
  if (rem <= 0) return false;
  const long r = std::lround(std::sqrt(static_cast<double>(rem)));
  for (long c = std::max(0L, r - 1); c <= r + 1; ++c)
    if (c * c == rem) {
      *root = c;
      return c % 2 != 0;
    }
  return false;
}

bool is_square(long rem, long* root) {
  if (rem < 0) return false;
  const long r = std::lround(std::sqrt(static_cast<double>(rem)));
  for (long c = std::max(0L, r - 1); c <= r + 1; ++c)
    if (c * c == rem) {
      *root = c;
      return true;
    }
  return false;
}

}  // namespace

long r4_count(int n, Lattice lattice) {
  if (n < 1) throw invalid_input_error("r4_count: n >= 1 required");
  long count = 0;
  if (lattice == Lattice::integers) {
    const long s = std::lround(std::floor(std::sqrt(static_cast<double>(n)))) + 1;
    for (long a = -s; a <= s; ++a)
      for (long b = -s; b <= s; ++b)
        for (long c = -s; c <= s; ++c) {
          const long rem = n - a * a - b * b - c * c;
          long root = 0;
          if (rem == 0)
            count += 1;
          else if (is_square(rem, &root) && root > 0)
            count += 2;
        }
  } else {
    // a_i = m_i / 2 with m_i odd; sum m_i^2 = 4n.
    const long N = 4L * n;
    const long s = std::lround(std::floor(std::sqrt(static_cast<double>(N)))) + 1;
    for (long a = -s; a <= s; ++a)
      for (long b = -s; b <= s; ++b)
        for (long c = -s; c <= s; ++c) {
          if (a % 2 == 0 || b % 2 == 0 || c % 2 == 0) continue;
          const long rem = N - a * a - b * b - c * c;
          long root = 0;
          if (is_odd_square_root(rem, &root)) count += 2;
        }
  }
  return count;
}

BiorthoTable::BiorthoTable(int n_max, int table_order)
    : n_max_(n_max),
      tbd_(build_tables<double>(std::max(table_order, n_max + 9))),
      tbq_(build_tables<f128>(std::max(table_order, n_max + 9))),
      snd_(n_max, tbd_),
      snq_(n_max, tbq_) {
  if (n_max < 1) throw invalid_input_error("BiorthoTable: n_max >= 1 required");

  // Endpoint cutoff: the largest delta for which the excluded arcs are
  // negligible, |S_{n_max}(1/lambda(e^{i delta}))| < 1e-19.  Near the cusps
  // +-1 the nome of the reduced point collapses, |1/lambda| ~ 16 e^{-pi /
  // sin theta}, so this terminates quickly.
  const SnPolynomialD& top = snd_.at(n_max_);
  double delta = 0.2;
  for (int it = 0; it < 200; ++it, delta *= 0.85) {
    const cdouble w = 1.0 / lambda_eval(tbd_, std::exp(kI * delta));
    double bound = 0.0, wk = 1.0;
    const double aw = std::abs(w);
    for (const cdouble& s : top.coeffs) {
      wk *= aw;
      bound += std::abs(s) * wk;
    }
    if (bound < 1e-19) break;
    if (it == 199)
      throw convergence_error("BiorthoTable: endpoint cutoff search failed");
  }
  path_.delta = delta;
  path_.nodes_per_panel = 64;

  // Panels geometrically widening from both endpoints toward pi/2.
  std::vector<double> breaks{delta};
  for (double b = 2.0 * delta; b < kPi / 2.0; b *= 2.0) breaks.push_back(b);
  breaks.push_back(kPi / 2.0);
  const std::size_t half = breaks.size();
  for (std::size_t i = half - 1; i-- > 0;) breaks.push_back(kPi - breaks[i]);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    path_.panels.emplace_back(breaks[i], breaks[i + 1]);

  // Node caches, double and quad.
  const GaussRule<double> rule_d = gauss_legendre<double>(path_.nodes_per_panel);
  const GaussRule<f128> rule_q = gauss_legendre<f128>(path_.nodes_per_panel);
  for (const auto& [lo, hi] : path_.panels) {
    const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < rule_d.nodes.size(); ++i) {
      NodeD nd;
      nd.theta = mid + hw * rule_d.nodes[i];
      nd.weight = hw * rule_d.weights[i];
      // Orientation: the contour is traversed from -1 to +1 (theta
      // decreasing), the direction in which it bounds the outer domain; the
      // A_1(0) oracle below pins the sign, so d eta = -i e^{i theta} d theta
      // while the theta panels stay ascending.
      nd.eta = std::exp(kI * nd.theta);
      nd.deta = -kI * nd.eta;
      auto [l, lp] = lambda_eval_d(tbd_, nd.eta);
      nd.lam = l;
      nd.lam_prime = lp;
      nodes_d_.push_back(nd);

      NodeQ nq;
      const f128 midq = (f128(lo) + f128(hi)) / f128(2);
      const f128 hwq = (f128(hi) - f128(lo)) / f128(2);
      nq.theta = midq + hwq * rule_q.nodes[i];
      nq.weight = hwq * rule_q.weights[i];
      nq.eta = c_exp(cquad(f128(0), f128(1)) * cquad(nq.theta));
      nq.deta = cquad(f128(0), f128(-1)) * nq.eta;
      auto [lq, lpq] = lambda_eval_d(tbq_, nq.eta);
      nq.lam = lq;
      nq.lam_prime = lpq;
      nodes_q_.push_back(nq);
    }
  }

  sn_nodes_d_.resize(static_cast<std::size_t>(n_max_));
  sn_nodes_q_.resize(static_cast<std::size_t>(n_max_));
  for (int n = 1; n <= n_max_; ++n) {
    auto& vd = sn_nodes_d_[static_cast<std::size_t>(n - 1)];
    auto& vq = sn_nodes_q_[static_cast<std::size_t>(n - 1)];
    vd.reserve(nodes_d_.size());
    vq.reserve(nodes_q_.size());
    for (const NodeD& nd : nodes_d_) vd.push_back(snd_.at(n).eval(1.0 / nd.lam));
    for (const NodeQ& nq : nodes_q_) vq.push_back(snq_.at(n).eval(cquad(f128(1)) / nq.lam));
  }

  // Validate the residue identity int_R e^{i pi m x}(x - eta)^{-2} dx =
  // -2 pi^2 m e^{i pi m eta} at (m, eta) = (1, i) against direct quadrature
  // before the fast pairing path relies on it.
  {
    const double X = 2000.0;
    const GaussRule<double> r8 = gauss_legendre<double>(8);
    cdouble direct(0.0);
    for (double a = -X; a < X - 0.5; a += 1.0)
      direct += gl_integrate(
          r8,
          [](double x) {
            const cdouble d = x - cdouble(0.0, 1.0);
            return std::exp(cdouble(0.0, kPi * x)) / (d * d);
          },
          a, a + 1.0);
    const cdouble oracle = -2.0 * kPi * kPi * std::exp(-kPi);
    if (std::abs(direct - oracle) > 5e-3)
      throw consistency_error("BiorthoTable: residue identity validation failed");
  }

  // Orientation self-test: A_1(0) = 8/pi^2 with the counterclockwise
  // convention; a sign flip here means the contour direction is wrong.
  const double a10 = an_eval(1, 0.0).real();
  if (std::abs(a10 - 8.0 / (kPi * kPi)) > 1e-6)
    throw consistency_error("BiorthoTable: A_1(0) orientation self-test failed");
}

const std::vector<cdouble>& BiorthoTable::sn_at_nodes(int n) const {
  if (n < 1 || n > n_max_) throw invalid_input_error("sn_at_nodes: n out of range");
  return sn_nodes_d_[static_cast<std::size_t>(n - 1)];
}

const std::vector<cquad>& BiorthoTable::sn_at_nodes_q(int n) const {
  if (n < 1 || n > n_max_) throw invalid_input_error("sn_at_nodes_q: n out of range");
  return sn_nodes_q_[static_cast<std::size_t>(n - 1)];
}

double BiorthoTable::a0_eval(double x) const {
  double acc = 0.0;
  for (const NodeD& nd : nodes_d_) {
    const double num = std::abs(nd.lam_prime) / std::norm(nd.lam);
    acc += nd.weight * num * nd.eta.imag() / std::norm(x - nd.eta);
  }
  return acc / (2.0 * kPi * kPi);
}

cdouble BiorthoTable::an_contour_d(int n, double x) const {
  const auto& sn = sn_at_nodes(n);
  cdouble acc(0.0);
  for (std::size_t i = 0; i < nodes_d_.size(); ++i) {
    const cdouble d = x - nodes_d_[i].eta;
    acc += nodes_d_[i].weight * sn[i] * nodes_d_[i].deta / (d * d);
  }
  return -acc / (4.0 * kPi * kPi * n);
}

cdouble BiorthoTable::bn_contour_d(int n, double x) const {
  const auto& sn = sn_at_nodes(n);
  cdouble acc(0.0);
  for (std::size_t i = 0; i < nodes_d_.size(); ++i) {
    const cdouble d = 1.0 + x * nodes_d_[i].eta;
    acc += nodes_d_[i].weight * sn[i] * nodes_d_[i].deta / (d * d);
  }
  return -acc / (4.0 * kPi * kPi * n);
}

cdouble BiorthoTable::an_contour_q(int n, double x) const {
  const auto& sn = sn_at_nodes_q(n);
  const f128 xq(x);
  cquad acc(f128(0));
  for (std::size_t i = 0; i < nodes_q_.size(); ++i) {
    const cquad d = cquad(xq) - nodes_q_[i].eta;
    acc += nodes_q_[i].weight * sn[i] * nodes_q_[i].deta / (d * d);
  }
  acc /= cquad(f128(-4) * pi_v<f128>() * pi_v<f128>() * f128(n));
  return to_cdouble(acc);
}

cdouble BiorthoTable::bn_contour_q(int n, double x) const {
  const auto& sn = sn_at_nodes_q(n);
  const f128 xq(x);
  cquad acc(f128(0));
  for (std::size_t i = 0; i < nodes_q_.size(); ++i) {
    const cquad d = cquad(f128(1)) + cquad(xq) * nodes_q_[i].eta;
    acc += nodes_q_[i].weight * sn[i] * nodes_q_[i].deta / (d * d);
  }
  acc /= cquad(f128(-4) * pi_v<f128>() * pi_v<f128>() * f128(n));
  return to_cdouble(acc);
}

cdouble BiorthoTable::an_eval(int n, double x) const {
  if (n == 0) throw invalid_input_error("an_eval: n != 0 required");
  if (n < 0) return std::conj(an_eval(-n, x));
  if (n > n_max_) throw invalid_input_error("an_eval: n exceeds table range");
  return n >= kQuadThreshold ? an_contour_q(n, x) : an_contour_d(n, x);
}

cdouble BiorthoTable::bn_eval(int n, double x) const {
  if (n == 0) throw invalid_input_error("bn_eval: n != 0 required");
  if (n < 0) return std::conj(bn_eval(-n, x));
  if (n > n_max_) throw invalid_input_error("bn_eval: n exceeds table range");
  return n >= kQuadThreshold ? bn_contour_q(n, x) : bn_contour_d(n, x);
}

std::pair<cdouble, cdouble> BiorthoTable::aplus_aminus(int n, double x) const {
  if (n < 1) throw invalid_input_error("aplus_aminus: n >= 1 required");
  const cdouble a = an_eval(n, x), b = bn_eval(n, x);
  return {a + b, a - b};
}

BiorthoPairing BiorthoTable::pairing_a(int n, int m, bool crosscheck, double X) const {
  if (n == 0) throw invalid_input_error("pairing_a: n != 0 required");
  if (n < 0) {
    BiorthoPairing p = pairing_a(-n, -m, crosscheck, X);
    p.value = std::conj(p.value);
    return p;
  }
  if (n > n_max_) throw invalid_input_error("pairing_a: n exceeds table range");

  BiorthoPairing out;
  if (m <= 0) {
    out.value = 0.0;
  } else if (n >= kQuadThreshold) {
    const auto& sn = sn_at_nodes_q(n);
    const cquad im_pi_m(f128(0), pi_v<f128>() * f128(m));
    cquad acc(f128(0));
    for (std::size_t i = 0; i < nodes_q_.size(); ++i)
      acc += nodes_q_[i].weight * sn[i] * c_exp(im_pi_m * nodes_q_[i].eta) *
             nodes_q_[i].deta;
    out.value = to_cdouble(acc * cquad(f128(m) / (f128(2) * f128(n))));
  } else {
    const auto& sn = sn_at_nodes(n);
    cdouble acc(0.0);
    for (std::size_t i = 0; i < nodes_d_.size(); ++i)
      acc += nodes_d_[i].weight * sn[i] *
             std::exp(cdouble(0.0, kPi * m) * nodes_d_[i].eta) * nodes_d_[i].deta;
    out.value = acc * (m / (2.0 * n));
  }
  if (!crosscheck) return out;

  // Slow path: panelized real-line integral of A_n(x) e^{i pi m x}, >= 8
  // nodes per oscillation period 2/m; tail bound from |A_n(x)| <=
  // sup_{|s|<=1}|B_n(s)| / x^2 for |x| >= 1 (inversion symmetry).
  if (!(X >= 2.0)) throw invalid_input_error("pairing_a: X >= 2 required");
  double supb = 0.0;
  for (double s = -1.0; s <= 1.0; s += 0.05)
    supb = std::max(supb, std::abs(bn_contour_d(n, s)));
  out.crosscheck_tail = 2.0 * supb / X;

  // Per-x evaluation through the precombined node table (double path).
  const auto& sn = sn_at_nodes(n);
  std::vector<cdouble> comb(nodes_d_.size());
  for (std::size_t i = 0; i < nodes_d_.size(); ++i)
    comb[i] = nodes_d_[i].weight * sn[i] * nodes_d_[i].deta;
  auto an_x = [&](double x) {
    cdouble acc(0.0);
    for (std::size_t i = 0; i < comb.size(); ++i) {
      const cdouble d = x - nodes_d_[i].eta;
      acc += comb[i] / (d * d);
    }
    return -acc / (4.0 * kPi * kPi * n);
  };
  const GaussRule<double> r8 = gauss_legendre<double>(8);
  const double h = 1.0 / std::max(1, std::abs(m));  // half an oscillation
  const long panels = static_cast<long>(std::ceil(2.0 * X / h));
  cdouble direct(0.0);
  for (long p = 0; p < panels; ++p) {
    const double a = -X + 2.0 * X * static_cast<double>(p) / panels;
    const double b = -X + 2.0 * X * static_cast<double>(p + 1) / panels;
    direct += gl_integrate(
        r8, [&](double x) { return an_x(x) * std::exp(cdouble(0.0, kPi * m * x)); },
        a, b);
  }
  out.crosscheck_residual = std::abs(direct - out.value);
  if (out.crosscheck_residual > out.crosscheck_tail + 1e-3)
    throw consistency_error("pairing_a: fast/direct cross-check disagreement");
  return out;
}

cdouble BiorthoTable::pairing_b(int n, int m) const {
  if (n == 0) throw invalid_input_error("pairing_b: n != 0 required");
  if (n < 0) return std::conj(pairing_b(-n, -m));
  if (n > n_max_) throw invalid_input_error("pairing_b: n exceeds table range");
  if (m <= 0) return 0.0;
  if (n >= kQuadThreshold) {
    const auto& sn = sn_at_nodes_q(n);
    const cquad im_pi_m(f128(0), pi_v<f128>() * f128(m));
    cquad acc(f128(0));
    for (std::size_t i = 0; i < nodes_q_.size(); ++i)
      acc += nodes_q_[i].weight * sn[i] *
             c_exp(-im_pi_m / nodes_q_[i].eta) * nodes_q_[i].deta /
             (nodes_q_[i].eta * nodes_q_[i].eta);
    return to_cdouble(acc * cquad(f128(m) / (f128(2) * f128(n))));
  }
  const auto& sn = sn_at_nodes(n);
  cdouble acc(0.0);
  for (std::size_t i = 0; i < nodes_d_.size(); ++i)
    acc += nodes_d_[i].weight * sn[i] *
           std::exp(cdouble(0.0, -kPi * m) / nodes_d_[i].eta) * nodes_d_[i].deta /
           (nodes_d_[i].eta * nodes_d_[i].eta);
  return acc * (m / (2.0 * n));
}

double BiorthoTable::envelope_constant(Which which, int n) const {
  // max of |f(x)|(1+x^2) on [-1,1] covers the core; for |x| > 1 the
  // inversion symmetry gives |f(x)|(1+x^2) <= 2 |g(-1/x)| with g the
  // inversion partner (B for A, A for B, A_0 for itself).
  double core = 0.0, partner = 0.0;
  for (double s = -1.0; s <= 1.0 + 1e-12; s += 0.05) {
    double v = 0.0, w = 0.0;
    switch (which) {
      case Which::A0:
        v = w = a0_eval(s);
        break;
      case Which::A:
        v = std::abs(an_eval(n, s));
        w = std::abs(bn_eval(n, s));
        break;
      case Which::B:
        v = std::abs(bn_eval(n, s));
        w = std::abs(an_eval(n, s));
        break;
    }
    core = std::max(core, v * (1.0 + s * s));
    partner = std::max(partner, w);
  }
  return std::max(core, 2.0 * partner);
}

PeriodizationResult BiorthoTable::periodization_sum(Which which, int n, double x,
                                                    long J) const {
  if (J < 10) throw invalid_input_error("periodization_sum: J >= 10 required");
  if (which != Which::A0 && n == 0) {
    if (which == Which::B) return {cdouble(0.0), 0.0};  // B_0 is identically 0
    throw invalid_input_error("periodization_sum: n != 0 required for A_n");
  }
  const int na = (which == Which::A0) ? 0 : std::abs(n);
  if (na > n_max_) throw invalid_input_error("periodization_sum: n exceeds table range");

  // One contour pass: the translation only touches the rational kernel, so
  // the partial sum over |j| <= J is moved inside the integrand.
  PeriodizationResult out;
  if (which == Which::A0) {
    double acc = 0.0;
    for (const NodeD& nd : nodes_d_) {
      const double num = std::abs(nd.lam_prime) / std::norm(nd.lam);
      double ker = 0.0;
      for (long j = -J; j <= J; ++j) ker += nd.eta.imag() / std::norm(x + 2.0 * j - nd.eta);
      acc += nd.weight * num * ker;
    }
    out.value = acc / (2.0 * kPi * kPi);
  } else {
    const auto& sn = sn_at_nodes(na);
    cdouble acc(0.0);
    for (std::size_t i = 0; i < nodes_d_.size(); ++i) {
      cdouble ker(0.0);
      if (which == Which::A) {
        for (long j = -J; j <= J; ++j) {
          const cdouble d = x + 2.0 * j - nodes_d_[i].eta;
          ker += 1.0 / (d * d);
        }
      } else {
        for (long j = -J; j <= J; ++j) {
          const cdouble d = 1.0 + (x + 2.0 * j) * nodes_d_[i].eta;
          ker += 1.0 / (d * d);
        }
      }
      acc += nodes_d_[i].weight * sn[i] * nodes_d_[i].deta * ker;
    }
    acc /= -4.0 * kPi * kPi * na;
    out.value = (n < 0) ? std::conj(acc) : acc;
  }
  const double C = envelope_constant(which, na);
  out.tail_bound = C / (2.0 * static_cast<double>(J) - std::abs(x));
  return out;
}

}  // namespace hyperfour
