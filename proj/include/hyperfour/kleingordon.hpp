// Klein-Gordon machinery: mixed exponential solutions U[phi](x, y) =
// int_R e^{ixt + iy/t} phi(t) dt, the interpolating basis on the
// lattice-cross {(pi m, 0)} u {(0, pi n)}, interpolation from prescribed
// lattice data, the transfer operators T_omega / T_k / T_<k>, generic
// periodization, and the Goursat compatibility kernel J_1.
#ifndef HYPERFOUR_KLEINGORDON_HPP
#define HYPERFOUR_KLEINGORDON_HPP

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "hyperfour/biortho.hpp"
#include "hyperfour/errors.hpp"
#include "hyperfour/fp.hpp"

namespace hyperfour {

enum class Axis { x_axis, y_axis };

class GridFunction;

// A Klein-Gordon solution u = U[phi].  Combinations over the biorthogonal
// system phi = alpha_0 A_0 + sum_{n != 0} (alpha_n A_n + beta_n B_{-n}) keep
// a reference to the table (which must outlive the wave function) and carry
// a fast lattice-point path through the semicircle pairings; arbitrary
// callables only support direct quadrature.
class WaveFunction {
 public:
  static WaveFunction combination(const BiorthoTable& bt,
                                  std::map<int, cdouble> alpha,
                                  std::map<int, cdouble> beta);
  // envelope: caller-asserted sup_t |phi(t)| (1 + t^2), used for tail bounds.
  static WaveFunction from_callable(std::function<cdouble(double)> phi,
                                    double envelope);

  cdouble phi(double t) const;
  double envelope() const { return env_; }
  bool is_combination() const { return bt_ != nullptr; }

  // Lattice-cross values through the fast pairing path (combination only):
  // u(pi m, 0) and u(0, pi m).  All basis integrals reduce to the semicircle
  // pairings (or to exact Kronecker statements for the A_0 term).
  cdouble lattice_x(int m) const;
  cdouble lattice_y(int m) const;

 private:
  WaveFunction() = default;
  const BiorthoTable* bt_ = nullptr;
  std::map<int, cdouble> alpha_, beta_;
  std::function<cdouble(double)> phi_;
  // Combination values are cached as cubic splines so quadrature nodes do
  // not re-run the contour evaluators: core_ holds phi on [-1, 1] and inv_
  // the inverted partner phi~ with phi(t) = phi~(-1/t)/t^2 for |t| > 1
  // (exact by the inversion symmetry of A_n / B_n).
  std::shared_ptr<const GridFunction> core_, inv_;
  double env_ = 0.0;
};

struct KgValue {
  cdouble value;
  double tail_bound;  // truncation of both integral ends
};

// Direct quadrature of U[phi](x, y): |t| in [1, X] integrated as is, |t| < 1
// through the substitution u = 1/t (polynomial phase in u), panels sized so
// each oscillation of either phase gets >= 8 nodes (GL-16 per <= pi of
// phase).  Tail bound ~ envelope * 4/X covers |t| > X and |t| < 1/X.
KgValue kg_eval(const WaveFunction& w, double x, double y, double X = 1000.0,
                long max_nodes = 6000000);

// The lattice-cross basis solutions u_{(n,0)} = U[A_n] (axis = x_axis) and
// u_{(0,n)} = U[B_{-n}] (axis = y_axis); n = 0 gives u_{(0,0)} = U[A_0] for
// either axis.
WaveFunction kg_interp_solution(const BiorthoTable& bt, int n, Axis axis);

// Interpolation from prescribed lattice data: builds phi with u(pi m, 0) =
// alpha_m and u(0, pi n) = beta_n.  The cross centre belongs to alpha_0;
// beta must not contain 0.
WaveFunction kg_interpolate(const BiorthoTable& bt,
                            const std::map<int, cdouble>& alpha,
                            const std::map<int, cdouble>& beta);

// Samples of f on a uniform grid over [-1, 1] with natural cubic spline
// interpolation; the transfer operators only ever evaluate inside [-1, 1].
class GridFunction {
 public:
  GridFunction(std::vector<cdouble> values);  // node count >= 64
  static GridFunction from_callable(const std::function<cdouble(double)>& f,
                                    int nodes);
  cdouble eval(double t) const;
  double max_abs() const { return max_abs_; }

 private:
  std::vector<cdouble> y_, y2_;
  double max_abs_ = 0.0;
};

enum class TransferKind { t_omega, t_k, t_abs_k };

struct TransferResult {
  cdouble value;
  double tail_bound;
};

// Partial transfer-operator sum over 1 <= |j| <= J:
//   T_omega f(t) = sum e^{i 2 pi j omega} (2j - t)^{-2}     f(1/(2j - t))
//   T_k     f(t) = sum (2j - t)^{-2-k}                      f(1/(2j - t))
//   T_<k>   f(t) = sum |2j - t|^{-2-k}                      f(1/(2j - t))
// param is omega for t_omega and k (a small non-negative integer) otherwise.
// Tail bound ||f||_inf * sum_{|j| > J} (2|j| - 1)^{-2-k}.
TransferResult transfer_apply(TransferKind kind, double param,
                              const GridFunction& f, double t, long J);

struct PeriodizeResult {
  cdouble value;
  double tail_bound;
};

// Partial periodization sum_{|j| <= J} psi(t + 2j) with the tail bound
// envelope / (2J - |t|), envelope = caller-asserted sup |psi(t)| (1 + t^2).
PeriodizeResult periodize(const std::function<cdouble(double)>& psi,
                          double envelope, double t, long J);

// Two-variable Bessel-type Goursat kernel J_1(x, y) = sum_{k >= 0}
// (-1)^k x^{k+1} y^k / (k! (k+1)!), compensated summation, |xy| <= 1e3.
double goursat_j1(double x, double y);

struct GoursatResult {
  cdouble lhs;  // u(0, y)
  cdouble rhs;  // u(0, 0) - int_0^T J_1(-y, t) u(t, 0) dt
  double residual;
};

// Goursat compatibility of the characteristic data of u = U[phi]:
// u(0, y) = u(0, 0) - int_0^{inf} J_1(-y, t) u(t, 0) dt for y <= 0.
// T truncates the t-integral (caller matches it to the decay of u(., 0)).
GoursatResult goursat_check(const WaveFunction& w, double y, double T = 12.0,
                            double X = 100.0);

}  // namespace hyperfour

#endif  // HYPERFOUR_KLEINGORDON_HPP
