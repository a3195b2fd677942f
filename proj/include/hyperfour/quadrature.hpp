// Gauss-Legendre quadrature: node/weight tables by Newton iteration on the
// Legendre polynomials, plus composite and adaptive drivers for real
// intervals with complex-valued integrands.  Everything is templated over
// the real type so the same rules drive the double and quad pipelines.
#ifndef HYPERFOUR_QUADRATURE_HPP
#define HYPERFOUR_QUADRATURE_HPP

#include <cstddef>
#include <vector>

#include "hyperfour/errors.hpp"
#include "hyperfour/fp.hpp"

namespace hyperfour {

template <class T>
struct GaussRule {
  std::vector<T> nodes;    // on (-1, 1)
  std::vector<T> weights;  // sum to 2
};

// Nodes are the roots of P_n; Newton from the Chebyshev-based initial guess
// converges in a handful of steps at any precision.
template <class T>
GaussRule<T> gauss_legendre(int n) {
  if (n < 2) throw invalid_input_error("gauss_legendre: n >= 2 required");
  GaussRule<T> rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const T pi = pi_v<T>();
  for (int i = 0; i < n; ++i) {
    T x = -r_cos(pi * (T(i) + T(0.75)) / (T(n) + T(0.5)));
    T dp = T(0);
    for (int it = 0; it < 60; ++it) {
      // Evaluate P_n and P_n' by the three-term recurrence.
      T p0 = T(1), p1 = x;
      for (int k = 2; k <= n; ++k) {
        const T p2 = ((T(2 * k - 1)) * x * p1 - T(k - 1) * p0) / T(k);
        p0 = p1;
        p1 = p2;
      }
      dp = T(n) * (x * p1 - p0) / (x * x - T(1));
      const T dx = p1 / dp;
      x -= dx;
      if (r_abs(dx) < T(8) * eps_v<T>()) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = T(2) / ((T(1) - x * x) * dp * dp);
  }
  return rule;
}

// Integral of f over [a, b] with a fixed rule.
template <class T, class F>
cplx<T> gl_integrate(const GaussRule<T>& rule, F&& f, T a, T b) {
  const T mid = (a + b) / T(2), half = (b - a) / T(2);
  cplx<T> acc(0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

// Adaptive bisection: a panel is accepted when one rule application agrees
// with its two half-panel refinement within tol_abs + tol_rel * |estimate|.
template <class T, class F>
cplx<T> gl_adaptive(const GaussRule<T>& rule, F&& f, T a, T b, T tol_abs, T tol_rel,
                    int max_depth = 30, int depth = 0) {
  const cplx<T> coarse = gl_integrate(rule, f, a, b);
  const T mid = (a + b) / T(2);
  const cplx<T> left = gl_integrate(rule, f, a, mid);
  const cplx<T> right = gl_integrate(rule, f, mid, b);
  const cplx<T> fine = left + right;
  if (c_abs(fine - coarse) <= tol_abs + tol_rel * c_abs(fine)) return fine;
  if (depth >= max_depth)
    throw convergence_error("gl_adaptive: refinement depth exhausted");
  return gl_adaptive(rule, f, a, mid, tol_abs / T(2), tol_rel, max_depth, depth + 1) +
         gl_adaptive(rule, f, mid, b, tol_abs / T(2), tol_rel, max_depth, depth + 1);
}

}  // namespace hyperfour

#endif  // HYPERFOUR_QUADRATURE_HPP
