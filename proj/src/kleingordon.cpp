#include "hyperfour/kleingordon.hpp"

#include <algorithm>
#include <cmath>

#include "hyperfour/quadrature.hpp"

namespace hyperfour {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
const cdouble kI(0.0, 1.0);

}  // namespace

GridFunction::GridFunction(std::vector<cdouble> values) : y_(std::move(values)) {
  const std::size_t n = y_.size();
  if (n < 64) throw invalid_input_error("GridFunction: node count >= 64 required");
  // Natural cubic spline second derivatives on the uniform grid over [-1, 1].
  y2_.assign(n, cdouble(0.0));
  std::vector<cdouble> u(n, cdouble(0.0));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const cdouble p = 0.5 * y2_[i - 1] + 2.0;
    y2_[i] = -0.5 / p;
    u[i] = y_[i + 1] - 2.0 * y_[i] + y_[i - 1];
    const double h = 2.0 / static_cast<double>(n - 1);
    u[i] = (3.0 * u[i] / (h * h) - 0.5 * u[i - 1]) / p;
  }
  for (std::size_t i = n - 1; i-- > 0;) y2_[i] = y2_[i] * y2_[i + 1] + u[i];
  for (const cdouble& v : y_) max_abs_ = std::max(max_abs_, std::abs(v));
}

GridFunction GridFunction::from_callable(const std::function<cdouble(double)>& f,
                                         int nodes) {
  if (nodes < 64) throw invalid_input_error("GridFunction: node count >= 64 required");
  std::vector<cdouble> v(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i)
    v[static_cast<std::size_t>(i)] = f(-1.0 + 2.0 * i / (nodes - 1));
  return GridFunction(std::move(v));
}

cdouble GridFunction::eval(double t) const {
  const std::size_t n = y_.size();
  const double h = 2.0 / static_cast<double>(n - 1);
  double s = (t + 1.0) / h;
  s = std::clamp(s, 0.0, static_cast<double>(n - 1));
  std::size_t lo = std::min(n - 2, static_cast<std::size_t>(s));
  const double b = s - static_cast<double>(lo), a = 1.0 - b;
  return a * y_[lo] + b * y_[lo + 1] +
         ((a * a * a - a) * y2_[lo] + (b * b * b - b) * y2_[lo + 1]) * (h * h) / 6.0;
}

WaveFunction WaveFunction::combination(const BiorthoTable& bt,
                                       std::map<int, cdouble> alpha,
                                       std::map<int, cdouble> beta) {
  for (const auto& [n, v] : alpha)
    if (std::abs(n) > bt.n_max())
      throw invalid_input_error("WaveFunction: alpha index exceeds table range");
  for (const auto& [n, v] : beta)
    if (n == 0 || std::abs(n) > bt.n_max())
      throw invalid_input_error("WaveFunction: beta index 0 or out of table range");

  WaveFunction w;
  w.bt_ = &bt;
  w.alpha_ = std::move(alpha);
  w.beta_ = std::move(beta);

  // phi(x)  = alpha_0 A_0(x) + sum alpha_n A_n(x) + beta_n B_{-n}(x) and the
  // inverted partner phi~(x) with phi(-1/x) = x^2 phi~(x), which by the
  // inversion symmetries swaps A_n <-> B_n and B_{-n} <-> A_{-n}.
  auto core = [&](double x) {
    cdouble v(0.0);
    for (const auto& [n, a] : w.alpha_)
      v += a * (n == 0 ? cdouble(bt.a0_eval(x)) : bt.an_eval(n, x));
    for (const auto& [n, b] : w.beta_) v += b * bt.bn_eval(-n, x);
    return v;
  };
  auto inv = [&](double x) {
    cdouble v(0.0);
    for (const auto& [n, a] : w.alpha_)
      v += a * (n == 0 ? cdouble(bt.a0_eval(x)) : bt.bn_eval(n, x));
    for (const auto& [n, b] : w.beta_) v += b * bt.an_eval(-n, x);
    return v;
  };
  const int kSplineNodes = 4001;
  w.core_ = std::make_shared<const GridFunction>(
      GridFunction::from_callable(core, kSplineNodes));
  w.inv_ = std::make_shared<const GridFunction>(
      GridFunction::from_callable(inv, kSplineNodes));

  double env = 0.0;
  for (int i = 0; i < kSplineNodes; ++i) {
    const double x = -1.0 + 2.0 * i / (kSplineNodes - 1);
    env = std::max(env, std::abs(w.core_->eval(x)) * (1.0 + x * x));
    env = std::max(env, std::abs(w.inv_->eval(x)) * (1.0 + x * x));
  }
  w.env_ = env;
  return w;
}

WaveFunction WaveFunction::from_callable(std::function<cdouble(double)> phi,
                                         double envelope) {
  if (!(envelope > 0.0))
    throw invalid_input_error("WaveFunction: positive envelope required");
  WaveFunction w;
  w.phi_ = std::move(phi);
  w.env_ = envelope;
  return w;
}

cdouble WaveFunction::phi(double t) const {
  if (!is_combination()) return phi_(t);
  if (std::abs(t) <= 1.0) return core_->eval(t);
  return inv_->eval(-1.0 / t) / (t * t);
}

cdouble WaveFunction::lattice_x(int m) const {
  if (!is_combination())
    throw invalid_input_error("lattice_x: fast path needs a biortho combination");
  cdouble v(0.0);
  for (const auto& [n, a] : alpha_) {
    if (n == 0)
      v += a * (m == 0 ? 1.0 : 0.0);  // int A_0 e^{i pi m t} dt = delta_{m0}
    else
      v += a * bt_->pairing_a(n, m).value;
  }
  // int B_{-n}(t) e^{i pi m t} dt = 0 for every m.
  for (const auto& [n, b] : beta_) v += b * bt_->pairing_b(-n, m);
  return v;
}

cdouble WaveFunction::lattice_y(int m) const {
  if (!is_combination())
    throw invalid_input_error("lattice_y: fast path needs a biortho combination");
  cdouble v(0.0);
  for (const auto& [n, a] : alpha_) {
    if (n == 0)
      v += a * (m == 0 ? 1.0 : 0.0);
    else
      // int A_n(t) e^{i pi m / t} dt = int B_n(s) e^{-i pi m s} ds = 0.
      v += a * bt_->pairing_b(n, -m);
  }
  // u_{(0,n)}(0, pi m) = U[A_n](pi m, 0) = <A_n, e_m> = delta_{mn}.
  for (const auto& [n, b] : beta_) v += b * bt_->pairing_a(n, m).value;
  return v;
}

KgValue kg_eval(const WaveFunction& w, double x, double y, double X,
                long max_nodes) {
  if (!(X >= 100.0)) throw invalid_input_error("kg_eval: X >= 100 required");
  // Phase-rate bound |x| + |y| on both halves, quantized with an offset so a
  // small perturbation of (x, y) (finite-difference stencils) cannot flip
  // the panel layout.
  const double rate = std::max(
      1.0, 0.5 * std::ceil(2.0 * (std::abs(x) + std::abs(y)) - 0.01) + 0.5);
  const double width = kPi / rate;  // phase change <= pi per panel
  const long panels_half = static_cast<long>(std::ceil((X - 1.0) / width));
  const GaussRule<double> rule = gauss_legendre<double>(16);
  if (4 * panels_half * 16 > max_nodes)
    throw resolution_error("kg_eval: node budget exceeded for the requested phases");

  // Part 1: |t| in [1, X].  Part 2: |t| < 1 via u = 1/t, which integrates
  // e^{iyu + ix/u} phi(1/u) u^{-2} over 1 < |u| <= X (roles of x and y swap).
  // Either sweep then continues past X with decay-aware panels until the
  // remainder bound min(2 env / a, 4 env / (|cx| a^2)) -- direct size vs.
  // one integration by parts against the fast phase -- drops below 1e-8 env.
  const double env = w.envelope();
  auto remainder = [env](double cx, double a) {
    const double direct = 2.0 * env / a;
    return std::abs(cx) > 0.0
               ? std::min(direct, 4.0 * env / (std::abs(cx) * a * a))
               : direct;
  };
  auto sweep = [&](double cx, double cy, auto&& density, double* tail) {
    cdouble acc(0.0);
    auto panel = [&](double a, double b) {
      for (double sgn : {1.0, -1.0}) {
        const double mid = 0.5 * sgn * (a + b), hw = 0.5 * (b - a);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const double t = mid + hw * rule.nodes[i];
          acc += (hw * rule.weights[i]) *
                 std::exp(kI * (cx * t + cy / t)) * density(t);
        }
      }
    };
    for (long p = 0; p < panels_half; ++p) {
      const double a = 1.0 + width * static_cast<double>(p);
      panel(a, std::min(X, a + width));
    }
    double a = X;
    long ext = 0;
    const double tol_ext = 1e-8 * std::max(1.0, env);
    while (remainder(cx, a) > tol_ext && a < 1e12 && ext < 100000) {
      const double rate = std::abs(cx) + std::abs(cy) / (a * a);
      const double wd = std::min(a, kPi / std::max(rate, kPi / a));
      panel(a, a + wd);
      a += wd;
      ++ext;
    }
    *tail += remainder(cx, a);
    return acc;
  };
  KgValue out;
  out.tail_bound = 0.0;
  out.value =
      sweep(x, y, [&](double t) { return w.phi(t); }, &out.tail_bound) +
      sweep(y, x, [&](double u) { return w.phi(1.0 / u) / (u * u); },
            &out.tail_bound);
  return out;
}

WaveFunction kg_interp_solution(const BiorthoTable& bt, int n, Axis axis) {
  if (std::abs(n) > bt.n_max())
    throw invalid_input_error("kg_interp_solution: n exceeds table range");
  std::map<int, cdouble> alpha, beta;
  if (n == 0)
    alpha[0] = 1.0;
  else if (axis == Axis::x_axis)
    alpha[n] = 1.0;
  else
    beta[n] = 1.0;
  return WaveFunction::combination(bt, std::move(alpha), std::move(beta));
}

WaveFunction kg_interpolate(const BiorthoTable& bt,
                            const std::map<int, cdouble>& alpha,
                            const std::map<int, cdouble>& beta) {
  return WaveFunction::combination(bt, alpha, beta);
}

TransferResult transfer_apply(TransferKind kind, double param,
                              const GridFunction& f, double t, long J) {
  if (!(std::abs(t) < 1.0)) throw domain_error("transfer_apply: |t| < 1 required");
  if (J < 100) throw invalid_input_error("transfer_apply: J >= 100 required");
  const int k = kind == TransferKind::t_omega ? 0 : static_cast<int>(param);
  if (k < 0 || k > 16) throw invalid_input_error("transfer_apply: 0 <= k <= 16 required");

  cdouble acc(0.0);
  for (long j = 1; j <= J; ++j) {
    for (double d : {2.0 * j - t, -2.0 * j - t}) {
      const cdouble fv = f.eval(1.0 / d);
      double wgt = 1.0 / (d * d);
      for (int p = 0; p < k; ++p) wgt /= d;
      switch (kind) {
        case TransferKind::t_omega:
          acc += std::exp(kI * (2.0 * kPi * static_cast<double>(j) * param *
                                (d > 0.0 ? 1.0 : -1.0))) *
                 wgt * fv;
          break;
        case TransferKind::t_k:
          acc += wgt * fv;
          break;
        case TransferKind::t_abs_k:
          acc += std::abs(wgt) * fv;
          break;
      }
    }
  }
  TransferResult out;
  out.value = acc;
  // ||f||_inf sum_{|j| > J} (2|j| - 1)^{-2-k} <= ||f||_inf (2J-1)^{-1-k}/(1+k).
  out.tail_bound =
      f.max_abs() * std::pow(2.0 * static_cast<double>(J) - 1.0, -1 - k) /
      (1.0 + k);
  return out;
}

PeriodizeResult periodize(const std::function<cdouble(double)>& psi,
                          double envelope, double t, long J) {
  if (J < 10) throw invalid_input_error("periodize: J >= 10 required");
  if (!(2.0 * static_cast<double>(J) > std::abs(t) + 2.0))
    throw invalid_input_error("periodize: J too small for |t|");
  cdouble acc(0.0);
  for (long j = -J; j <= J; ++j) acc += psi(t + 2.0 * static_cast<double>(j));
  PeriodizeResult out;
  out.value = acc;
  out.tail_bound = envelope / (2.0 * static_cast<double>(J) - std::abs(t));
  return out;
}

double goursat_j1(double x, double y) {
  if (std::abs(x * y) > 1e3)
    throw invalid_input_error("goursat_j1: |xy| <= 1e3 required");
  // Kahan-compensated power series; terms decay superexponentially once
  // k^2 > |xy|.
  double sum = 0.0, comp = 0.0, term = x, max_term = 0.0;
  for (int k = 0; k < 400; ++k) {
    const double yt = term - comp;
    const double st = sum + yt;
    comp = (st - sum) - yt;
    sum = st;
    max_term = std::max(max_term, std::abs(term));
    term *= -x * y / (static_cast<double>(k + 1) * static_cast<double>(k + 2));
    if (std::abs(term) < 1e-18 * std::max(1.0, max_term)) break;
  }
  return sum;
}

GoursatResult goursat_check(const WaveFunction& w, double y, double T, double X) {
  if (!(y <= 0.0 && y >= -5.0))
    throw invalid_input_error("goursat_check: y in [-5, 0] required");
  GoursatResult out;
  out.lhs = kg_eval(w, 0.0, y, X).value;
  const cdouble u00 = kg_eval(w, 0.0, 0.0, X).value;
  cdouble integral(0.0);
  if (y < 0.0) {
    const GaussRule<double> rule = gauss_legendre<double>(16);
    const double width = 0.5;
    for (double a = 0.0; a < T; a += width) {
      const double b = std::min(T, a + width);
      integral += gl_integrate(
          rule,
          [&](double t) {
            return goursat_j1(-y, t) * kg_eval(w, t, 0.0, X).value;
          },
          a, b);
    }
  }
  out.rhs = u00 - integral;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace hyperfour
