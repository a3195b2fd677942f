#include "hyperfour/expand.hpp"

#include <algorithm>
#include <cmath>

#include "hyperfour/quadrature.hpp"

namespace hyperfour {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
const cdouble kI(0.0, 1.0);

// Natural cubic spline through (theta_i, y_i), complex values.
struct Spline {
  std::vector<double> t;
  std::vector<cdouble> y, y2;  // second derivatives

  Spline(std::vector<double> theta, std::vector<cdouble> vals)
      : t(std::move(theta)), y(std::move(vals)) {
    const std::size_t n = t.size();
    y2.assign(n, cdouble(0.0));
    std::vector<cdouble> u(n, cdouble(0.0));
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double sig = (t[i] - t[i - 1]) / (t[i + 1] - t[i - 1]);
      const cdouble p = sig * y2[i - 1] + 2.0;
      y2[i] = (sig - 1.0) / p;
      u[i] = (y[i + 1] - y[i]) / (t[i + 1] - t[i]) - (y[i] - y[i - 1]) / (t[i] - t[i - 1]);
      u[i] = (6.0 * u[i] / (t[i + 1] - t[i - 1]) - sig * u[i - 1]) / p;
    }
    for (std::size_t i = n - 1; i-- > 0;) y2[i] = y2[i] * y2[i + 1] + u[i];
  }

  cdouble operator()(double x) const {
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t hi = std::min(t.size() - 1,
                              static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                                  1, it - t.begin())));
    const std::size_t lo = hi - 1;
    const double h = t[hi] - t[lo];
    const double a = (t[hi] - x) / h, b = (x - t[lo]) / h;
    return a * y[lo] + b * y[hi] +
           ((a * a * a - a) * y2[lo] + (b * b * b - b) * y2[hi]) * (h * h) / 6.0;
  }
};

}  // namespace

BoundaryFunction BoundaryFunction::cauchy(double x) {
  BoundaryFunction f;
  f.kind = Kind::cauchy;
  f.interior_ok = true;
  f.eval = [x](cdouble tau) { return 1.0 / (cdouble(0.0, 2.0 * kPi) * (x - tau)); };
  f.eval_q = [x](cquad tau) {
    return cquad(f128(1)) /
           (cquad(f128(0), f128(2) * pi_v<f128>()) * (cquad(f128(x)) - tau));
  };
  return f;
}

BoundaryFunction BoundaryFunction::constant(cdouble v) {
  BoundaryFunction f;
  f.kind = Kind::constant;
  f.interior_ok = true;
  f.eval = [v](cdouble) { return v; };
  const cquad vq = to_cplx<f128>(v);
  f.eval_q = [vq](cquad) { return vq; };
  return f;
}

BoundaryFunction BoundaryFunction::pure_exponential(int n) {
  if (n < 1) throw invalid_input_error("pure_exponential: n >= 1 required");
  BoundaryFunction f;
  f.kind = Kind::pure_exponential;
  f.interior_ok = true;
  f.eval = [n](cdouble tau) { return std::exp(cdouble(0.0, kPi * n) * tau); };
  f.eval_q = [n](cquad tau) { return c_exp(cquad(f128(0), pi_v<f128>() * f128(n)) * tau); };
  return f;
}

BoundaryFunction BoundaryFunction::sampled(std::vector<double> theta,
                                           std::vector<cdouble> values) {
  if (theta.size() != values.size() || theta.size() < 4)
    throw invalid_input_error("sampled: need >= 4 matching samples");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!(theta[i] > 0.0 && theta[i] < kPi))
      throw invalid_input_error("sampled: theta outside (0, pi)");
    if (i > 0 && !(theta[i] > theta[i - 1]))
      throw invalid_input_error("sampled: theta not strictly increasing");
  }
  BoundaryFunction f;
  f.kind = Kind::sampled;
  f.interior_ok = false;
  // Interpolation error estimate ~ (5/384) h^4 max|f''''| via the fourth
  // difference of the samples.
  double est = 0.0;
  for (std::size_t i = 0; i + 4 < theta.size(); ++i) {
    const cdouble d4 = values[i] - 4.0 * values[i + 1] + 6.0 * values[i + 2] -
                       4.0 * values[i + 3] + values[i + 4];
    est = std::max(est, std::abs(d4));
  }
  f.sample_error = 5.0 / 384.0 * est;
  auto sp = std::make_shared<Spline>(std::move(theta), std::move(values));
  f.eval = [sp](cdouble eta) { return (*sp)(std::atan2(eta.imag(), eta.real())); };
  return f;
}

HarmonicEvaluator::HarmonicEvaluator(BoundaryFunction f, const ModularTablesD& tb)
    : f_(std::move(f)), tb_(tb) {
  // Endpoint cutoff 0.1: the excluded arcs map to |lambda| >~ e^{pi /
  // sin 0.1}/16 ~ 1e12 on the boundary line, so their Poisson mass against
  // bounded data is < ~1e-12.
  const double delta = 0.1;
  std::vector<double> breaks{delta};
  for (double b = 2.0 * delta; b < kPi / 2.0; b *= 2.0) breaks.push_back(b);
  breaks.push_back(kPi / 2.0);
  const std::size_t half = breaks.size();
  for (std::size_t i = half - 1; i-- > 0;) breaks.push_back(kPi - breaks[i]);

  const GaussRule<double> rule = gauss_legendre<double>(64);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
    const double hw = 0.5 * (breaks[p + 1] - breaks[p]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      Node nd;
      nd.theta = mid + hw * rule.nodes[i];
      nd.weight = hw * rule.weights[i];
      nd.eta = std::exp(kI * nd.theta);
      auto [l, lp] = lambda_eval_d(tb_, nd.eta);
      nd.lam = l;
      nd.lam_prime = lp;
      nd.fval = f_.eval(nd.eta);
      nodes_.push_back(nd);
    }
  }

  if (f_.eval_q) {
    tbq_ = std::make_shared<const ModularTables<f128>>(build_tables<f128>(64));
    // Wider cusp coverage (0.05) and GL-96 panels: the quad table's
    // truncation error sets the attainable coefficient accuracy at high n.
    std::vector<double> bq{0.05};
    for (double b = 0.1; b < kPi / 2.0; b *= 2.0) bq.push_back(b);
    bq.push_back(kPi / 2.0);
    const std::size_t hq = bq.size();
    for (std::size_t i = hq - 1; i-- > 0;) bq.push_back(kPi - bq[i]);
    const GaussRule<f128> rq = gauss_legendre<f128>(96);
    for (std::size_t p = 0; p + 1 < bq.size(); ++p) {
      const f128 mid = (f128(bq[p]) + f128(bq[p + 1])) / f128(2);
      const f128 hw = (f128(bq[p + 1]) - f128(bq[p])) / f128(2);
      for (std::size_t i = 0; i < rq.nodes.size(); ++i) {
        NodeQ nq;
        const f128 th = mid + hw * rq.nodes[i];
        nq.weight = hw * rq.weights[i];
        const cquad eta = c_exp(cquad(f128(0), f128(1)) * cquad(th));
        auto [lq, lpq] = lambda_eval_d(*tbq_, eta);
        nq.lam = lq;
        nq.alam_prime = c_abs(lpq);
        nq.fval = f_.eval_q(eta);
        nodes_q_.push_back(nq);
      }
    }
  }
}

const ModularTables<f128>& HarmonicEvaluator::tables_q() const {
  if (!tbq_) throw invalid_input_error("tables_q: boundary data has no quad evaluator");
  return *tbq_;
}

cdouble HarmonicEvaluator::f_sym(cdouble tau) const {
  if (!f_.interior_ok)
    throw invalid_input_error("f_sym: boundary data has no interior evaluator");
  return f_.eval(tau) + f_.eval(1.0 / std::conj(tau));
}

cdouble poisson_lambda_solve(const HarmonicEvaluator& ev, HPoint tau) {
  if (!(tau.imag() > 0.0)) throw domain_error("poisson_lambda_solve: Im tau <= 0");
  const HPoint m = mod2(tau);
  const double am = std::abs(m);
  if (am <= 1.0 + 1e-9) {
    if (am < 1.0 - 1e-9)
      throw domain_error("poisson_lambda_solve: tau outside Omega_0");
    return ev.boundary().eval(m / am);  // boundary value on T_+
  }
  const cdouble w = lambda_eval(ev.tables(), m);
  const double eps = 0.5 - w.real();

  if (eps >= 0.25) {
    cdouble acc(0.0);
    for (const auto& nd : ev.nodes())
      acc += nd.weight * nd.fval * std::abs(nd.lam_prime) / std::norm(w - nd.lam);
    return acc * (eps / kPi);
  }
  // Kernel peaked near lambda(eta) ~ w (a Lorentzian of width ~ eps in the
  // boundary coordinate): locate the peak angle and integrate on a mesh
  // graded geometrically toward it, so every panel sees a modest kernel
  // variation regardless of how small eps is.
  const GaussRule<double> rule = gauss_legendre<double>(32);
  const auto& tb = ev.tables();
  const auto& f = ev.boundary();
  auto integrand = [&](double th) {
    const cdouble eta = std::exp(kI * th);
    auto [l, lp] = lambda_eval_d(tb, eta);
    return f.eval(eta) * std::abs(lp) / std::norm(w - l);
  };
  auto dist = [&](double th) {
    return std::abs(lambda_eval(tb, std::exp(kI * th)) - w);
  };
  const double lo = 0.1, hi = kPi - 0.1;
  double peak = lo, best = dist(lo);
  for (int k = 1; k <= 256; ++k) {
    const double th = lo + (hi - lo) * k / 256.0;
    const double d = dist(th);
    if (d < best) {
      best = d;
      peak = th;
    }
  }
  {  // golden-section sharpening
    const double gr = 0.6180339887498949;
    double a = std::max(lo, peak - (hi - lo) / 256.0);
    double b = std::min(hi, peak + (hi - lo) / 256.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = dist(x1), f2 = dist(x2);
    for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
      if (f1 < f2) {
        b = x2; x2 = x1; f2 = f1;
        x1 = b - gr * (b - a);
        f1 = dist(x1);
      } else {
        a = x1; x1 = x2; f1 = f2;
        x2 = a + gr * (b - a);
        f2 = dist(x2);
      }
    }
    peak = 0.5 * (a + b);
  }
  const double wmin = std::max(std::max(eps, best) * 1e-3, 1e-13);
  auto graded = [&](double from, double to) {  // |to - peak| < |from - peak|
    std::vector<double> pts{from};
    double d = std::abs(from - peak);
    while (d > std::abs(to - peak) * 1.0001 && d > wmin) {
      d *= 0.5;
      pts.push_back(peak + (from < peak ? -d : d));
    }
    pts.back() = to;
    return pts;
  };
  cdouble acc(0.0);
  if (peak - lo > wmin) {
    const auto pts = graded(lo, peak - wmin);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      acc += gl_integrate(rule, integrand, pts[i], pts[i + 1]);
  }
  if (hi - peak > wmin) {
    const auto pts = graded(hi, peak + wmin);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      acc += gl_integrate(rule, integrand, pts[i + 1], pts[i]);
  }
  acc += gl_integrate(rule, integrand, std::max(lo, peak - wmin),
                      std::min(hi, peak + wmin));
  return acc * (eps / kPi);
}

cdouble extend_harmonic(const HarmonicEvaluator& ev, HPoint tau) {
  if (!(tau.imag() > 0.0)) throw domain_error("extend_harmonic: Im tau <= 0");
  const HPoint m = mod2(tau);
  const double am = std::abs(m);
  if (std::abs(am - 1.0) < 1e-9) return ev.boundary().eval(m / am);
  const FlycatcherResult fc = flycatcher_height(tau, true);
  cdouble acc(0.0);
  double sign = 1.0;
  for (int j = 0; j < fc.height; ++j, sign = -sign)
    acc += sign * ev.f_sym(fc.orbit[static_cast<std::size_t>(j)]);
  acc += sign * poisson_lambda_solve(ev, fc.orbit.back());
  return acc;
}

cdouble extract_coeff(const std::function<cdouble(cdouble)>& h, int n, double s,
                      int M) {
  if (!(s > 0.0)) throw invalid_input_error("extract_coeff: s > 0 required");
  if (M < 8) throw invalid_input_error("extract_coeff: M >= 8 required");
  cdouble acc(0.0);
  for (int k = 0; k < M; ++k) {
    const double t = -1.0 + 2.0 * k / M;
    acc += std::exp(cdouble(0.0, -kPi * n * t)) * h(cdouble(t, s));
  }
  return acc * (std::exp(kPi * std::abs(n) * s) / M);
}

namespace {

// Fixed-table Poisson values h(t_k + is), k = 0..M-1, in quad precision.
// The trapezoid line must stay inside Omega_0 and the kernel must stay wide
// (eps >= 0.25) so the tau-independent node table resolves it.
std::vector<cquad> poisson_line_q(const HarmonicEvaluator& ev, double s, int M) {
  const auto& tbq = ev.tables_q();
  std::vector<cquad> h(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k) {
    const f128 t = f128(-1) + f128(2) * f128(k) / f128(M);
    const cquad tau(t, f128(s));
    const cquad w = lambda_eval(tbq, tau);
    const f128 eps = f128(0.5) - w.real();
    if (!(to_double(eps) >= 0.25))
      throw algorithm_error("poisson_line_q: kernel too narrow for the fixed table");
    cquad acc(f128(0));
    for (const auto& nq : ev.nodes_q()) {
      const cquad d = w - nq.lam;
      const f128 nrm = d.real() * d.real() + d.imag() * d.imag();
      acc += (nq.weight * nq.alam_prime / nrm) * nq.fval;
    }
    h[static_cast<std::size_t>(k)] = acc * cquad(eps / pi_v<f128>());
  }
  return h;
}

cdouble coeff_from_line_q(const std::vector<cquad>& h, int n, double s) {
  const int M = static_cast<int>(h.size());
  cquad acc(f128(0));
  for (int k = 0; k < M; ++k) {
    const f128 ph = -pi_v<f128>() * f128(n) * (f128(-1) + f128(2) * f128(k) / f128(M));
    acc += cquad(r_cos(ph), r_sin(ph)) * h[static_cast<std::size_t>(k)];
  }
  acc *= c_exp(cquad(pi_v<f128>() * f128(std::abs(n)) * f128(s))) / cquad(f128(M));
  return to_cdouble(acc);
}

}  // namespace

cdouble extract_coeff(const HarmonicEvaluator& ev, int n, double s, int M) {
  if (!(s > 0.0)) throw invalid_input_error("extract_coeff: s > 0 required");
  if (ev.has_quad() && s > 1.2) {
    const auto h = poisson_line_q(ev, s, M);
    return coeff_from_line_q(h, n, s);
  }
  return extract_coeff(
      [&ev](cdouble tau) { return extend_harmonic(ev, tau); }, n, s, M);
}

HfsCoefficients expand_boundary(const BoundaryFunction& f, int N,
                                const ModularTablesD& tb,
                                double* boundary_residual) {
  if (N < 0) throw invalid_input_error("expand_boundary: N >= 0 required");
  HarmonicEvaluator ev(f, tb);
  HfsCoefficients two;
  two.sided = Sided::two_sided_harmonic;
  if (ev.has_quad()) {
    const auto h = poisson_line_q(ev, 2.0, 2048);
    for (int n = -N; n <= N; ++n) {
      const cdouble c = coeff_from_line_q(h, n, 2.0);
      if (n == 0)
        two.a0 = c;
      else
        two.a[n] = c;
    }
  } else {
    for (int n = -N; n <= N; ++n) {
      const cdouble c = extract_coeff(
          [&ev](cdouble tau) { return poisson_lambda_solve(ev, tau); }, n, 2.0);
      if (n == 0)
        two.a0 = c;
      else
        two.a[n] = c;
    }
  }
  HfsCoefficients out = schwarz_transform(two);
  if (boundary_residual != nullptr) {
    double r = 0.0;
    for (double th : {0.5, 1.1, 1.7, 2.3, 2.9}) {
      const cdouble eta = std::exp(kI * th);
      r = std::max(r, std::abs(hfs_eval(out, eta) - f.eval(eta)));
    }
    *boundary_residual = r;
  }
  return out;
}

cdouble expand_fast_positive(const BiorthoTable& bt, const BoundaryFunction& f,
                             int n, const cdouble* slow_an, double tol) {
  if (n < 1) throw invalid_input_error("expand_fast_positive: n >= 1 required");
  if (n > bt.n_max()) throw invalid_input_error("expand_fast_positive: n exceeds table range");
  cdouble fast;
  if (n >= BiorthoTable::kQuadThreshold) {
    if (!f.eval_q)
      throw invalid_input_error("expand_fast_positive: quad evaluator required for n >= 4");
    const auto& sn = bt.sn_table_q().at(n);
    cquad acc(f128(0));
    for (const auto& nq : bt.nodes_q()) {
      const cquad w = cquad(f128(1)) / nq.lam;
      acc += nq.weight * nq.lam_prime * w * w * sn.eval_derivative(w) *
             f.eval_q(nq.eta) * nq.deta;
    }
    acc *= cquad(f128(0), f128(-1)) / (f128(2) * pi_v<f128>() * f128(n));
    fast = to_cdouble(acc);
  } else {
    const auto& sn = bt.sn_table().at(n);
    cdouble acc(0.0);
    for (const auto& nd : bt.nodes()) {
      const cdouble w = 1.0 / nd.lam;
      acc += nd.weight * nd.lam_prime * w * w * sn.eval_derivative(w) *
             f.eval(nd.eta) * nd.deta;
    }
    fast = acc * (-kI / (2.0 * kPi * n));
  }
  if (slow_an != nullptr && std::abs(fast - *slow_an) > tol)
    throw consistency_error("expand_fast_positive: fast/slow path disagreement");
  return fast;
}

}  // namespace hyperfour
