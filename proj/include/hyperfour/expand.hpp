// Boundary-to-coefficients engine: harmonic solution of the lambda-Poisson
// problem on the fundamental region, harmonic extension along the
// fly-catcher orbit, Fourier coefficient extraction on horizontal lines, and
// assembly of the hyperbolic Fourier expansion of holomorphic boundary data
// given on the upper unit semicircle T_+.
#ifndef HYPERFOUR_EXPAND_HPP
#define HYPERFOUR_EXPAND_HPP

#include <functional>
#include <memory>
#include <vector>

#include "hyperfour/biortho.hpp"
#include "hyperfour/errors.hpp"
#include "hyperfour/fp.hpp"
#include "hyperfour/halfplane.hpp"
#include "hyperfour/hfs.hpp"
#include "hyperfour/modular.hpp"

namespace hyperfour {

// Boundary data on T_+.  The analytic kinds (cauchy, constant,
// pure_exponential) evaluate anywhere in the closed upper half-plane, which
// the orbit extension needs; they also carry a quad-precision evaluator for
// the high-n fast extraction path.  Sampled data only lives on T_+ (cubic
// spline in theta), so it is restricted to the direct s = 2 extraction and
// the double-precision paths.
struct BoundaryFunction {
  enum class Kind { cauchy, constant, pure_exponential, sampled };
  Kind kind = Kind::constant;
  std::function<cdouble(cdouble)> eval;   // eta on T_+ (or tau in H if interior_ok)
  std::function<cquad(cquad)> eval_q;     // optional quad twin
  bool interior_ok = false;
  double sample_error = 0.0;  // recorded interpolation error estimate (sampled)

  static BoundaryFunction cauchy(double x);         // f_x = 1/(2 pi i (x - tau))
  static BoundaryFunction constant(cdouble v);
  static BoundaryFunction pure_exponential(int n);  // e^{i pi n tau}, n >= 1
  // theta strictly increasing within (0, pi); natural cubic spline.
  static BoundaryFunction sampled(std::vector<double> theta, std::vector<cdouble> values);
};

// Immutable closure over the boundary data and the lambda-Poisson node
// tables; all evaluation entry points are const and thread-safe.
class HarmonicEvaluator {
 public:
  HarmonicEvaluator(BoundaryFunction f, const ModularTablesD& tb);

  const BoundaryFunction& boundary() const { return f_; }
  const ModularTablesD& tables() const { return tb_; }

  // f + f o S* with S*(tau) = 1/conj(tau); requires interior evaluation
  // except on T_+ itself (where it equals 2 f).
  cdouble f_sym(cdouble tau) const;

  // Fixed-table lambda-Poisson kernel nodes.
  struct Node {
    double theta, weight;
    cdouble eta, lam, lam_prime;
    cdouble fval;
  };
  const std::vector<Node>& nodes() const { return nodes_; }

  // Quad twin of the fixed table, present when the data carries eval_q.
  // Extraction multiplies rounding noise by e^{2 pi n}, which exhausts double
  // precision near n = 4; the quad table keeps the noise floor near 1e-34 so
  // coefficients remain accurate through n ~ 12.
  struct NodeQ {
    f128 weight;
    cquad lam;
    f128 alam_prime;  // |lambda'|
    cquad fval;
  };
  const std::vector<NodeQ>& nodes_q() const { return nodes_q_; }
  bool has_quad() const { return !nodes_q_.empty(); }
  const ModularTables<f128>& tables_q() const;

 private:
  friend cdouble poisson_lambda_solve(const HarmonicEvaluator&, HPoint);
  BoundaryFunction f_;
  const ModularTablesD& tb_;
  std::vector<Node> nodes_;
  std::vector<NodeQ> nodes_q_;
  std::shared_ptr<const ModularTables<f128>> tbq_;
};

// h_0(tau) = (1/pi) int_{T_+} (1/2 - Re lambda(tau)) / |lambda(tau) -
// lambda(eta)|^2 f(eta) |lambda'(eta)| |d eta| for tau in Omega_0 (the part
// of H outside every disk |tau - 2j| <= 1): the half-plane Poisson integral
// in lambda coordinates, since lambda maps Omega_0 mod 2 onto {Re w < 1/2}
// and T_+ onto the boundary line Re w = 1/2.  Fixed node tables when the
// kernel is wide (1/2 - Re lambda(tau) >= 0.25), adaptive quadrature when
// tau approaches the boundary and the kernel peaks.
cdouble poisson_lambda_solve(const HarmonicEvaluator& ev, HPoint tau);

// Harmonic extension to all of H via the alternating fly-catcher orbit sum
//   h(tau) = sum_{j<N} (-1)^j f_sym(tau_j) + (-1)^N h_0(tau_N),
// where tau_0 = mod2(tau), tau_{j+1} = mod2(S*(tau_j)) and N is the orbit
// height.  Points on T_+ return the boundary data directly.
cdouble extend_harmonic(const HarmonicEvaluator& ev, HPoint tau);

// c_n = (e^{pi |n| s} / 2) int_{-1}^{1} e^{-i pi n t} h(t + i s) dt by the
// M-point trapezoid rule (spectrally accurate: the integrand is 2-periodic).
// When the line t + is stays in Omega_0 (s > 1.2) and quad nodes are present
// the sum runs in quad precision to beat the e^{pi |n| s} noise
// amplification; otherwise it falls back to the double orbit extension.
cdouble extract_coeff(const HarmonicEvaluator& ev, int n, double s, int M = 2048);

// Same quadrature against an arbitrary harmonic evaluator h.
cdouble extract_coeff(const std::function<cdouble(cdouble)>& h, int n, double s,
                      int M = 2048);

// Full pipeline: Poisson solve on the fixed node table, extraction of c_n
// for |n| <= N at height s = 2 (the line t + 2i never leaves Omega_0, so no
// orbit recursion is involved), Schwarz relabeling to one-sided (a0, a_n,
// b_n).  The node-table approximation of h is exactly harmonic, so its
// coefficients are height-invariant and only arithmetic rounding is
// amplified by e^{2 pi n}; the quad table keeps that floor low enough for
// n ~ 12 (data without eval_q, e.g. sampled, is limited to small n).  If
// boundary_residual is non-null it receives max_theta |f(e^{i theta}) -
// series(e^{i theta})| over a fixed angle sample (truncation diagnostic).
HfsCoefficients expand_boundary(const BoundaryFunction& f, int N,
                                const ModularTablesD& tb,
                                double* boundary_residual = nullptr);

// Contour shortcut for the positive coefficients,
//   a_n(f) = (i / (2 pi n)) int_{T_+} lambda'(eta) lambda(eta)^{-2}
//            S_n'(1/lambda(eta)) f(eta) d eta,
// on the biortho node cache (quad nodes for n >= BiorthoTable::kQuadThreshold,
// which requires f.eval_q).  If slow_an is non-null the value is gated
// against it and a disagreement beyond tol raises consistency_error.
cdouble expand_fast_positive(const BiorthoTable& bt, const BoundaryFunction& f,
                             int n, const cdouble* slow_an = nullptr,
                             double tol = 1e-7);

}  // namespace hyperfour

#endif  // HYPERFOUR_EXPAND_HPP
