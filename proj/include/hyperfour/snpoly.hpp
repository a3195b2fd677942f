// Principal-part polynomials S_n: the unique degree-n polynomial with
// S_n(0) = 0 such that q^{-n} - S_n(1/lambda) has no negative q-powers,
// i.e. e^{-i pi n tau} - S_n(1/lambda(tau)) stays bounded.  The bounded
// remainder R_n is kept as a q-power series so it can be evaluated without
// catastrophic cancellation high in the half-plane.
#ifndef HYPERFOUR_SNPOLY_HPP
#define HYPERFOUR_SNPOLY_HPP

#include <vector>

#include "hyperfour/errors.hpp"
#include "hyperfour/fp.hpp"
#include "hyperfour/modular.hpp"
#include "hyperfour/qseries.hpp"

namespace hyperfour {

template <class T>
struct SnPolynomial {
  int n = 0;
  std::vector<cplx<T>> coeffs;     // s_1..s_n, so S_n(w) = sum_k s_k w^k
  NomeSeries<T> remainder_series;  // q-series of q^{-n} - S_n(1/lambda), min_order 0

  cplx<T> eval(const cplx<T>& w) const {
    cplx<T> v(0);
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * w + coeffs[k];
    return v * w;
  }

  // S_n'(w).
  cplx<T> eval_derivative(const cplx<T>& w) const {
    cplx<T> v(0);
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * w + T(k + 1) * coeffs[k];
    return v;
  }
};

using SnPolynomialD = SnPolynomial<double>;
using SnPolynomialQ = SnPolynomial<f128>;

template <class T>
SnPolynomial<T> sn_compute(int n, const ModularTables<T>& tb) {
  if (n < 1) throw invalid_input_error("sn_compute: n >= 1 required");
  if (tb.truncation_order < n + 8)
    throw invalid_series_error("sn_compute: tables truncation order < n + 8");

  // Laurent series of (1/lambda)^k, pole order exactly k with leading
  // coefficient 16^{-k}: the elimination below is triangular, no pivoting.
  const NomeSeries<T> inv_lambda = ns_inv(tb.lambda);
  std::vector<NomeSeries<T>> pow_k;  // pow_k[k-1] = (1/lambda)^k
  pow_k.reserve(static_cast<std::size_t>(n));
  pow_k.push_back(inv_lambda);
  for (int k = 2; k <= n; ++k) pow_k.push_back(ns_mul(pow_k.back(), inv_lambda));

  SnPolynomial<T> sn;
  sn.n = n;
  sn.coeffs.assign(static_cast<std::size_t>(n), cplx<T>(0));
  for (int j = n; j >= 1; --j) {
    cplx<T> acc = (j == n) ? cplx<T>(1) : cplx<T>(0);
    for (int k = j + 1; k <= n; ++k)
      acc -= sn.coeffs[static_cast<std::size_t>(k - 1)] * pow_k[static_cast<std::size_t>(k - 1)].coeff(-j);
    sn.coeffs[static_cast<std::size_t>(j - 1)] = acc / pow_k[static_cast<std::size_t>(j - 1)].coeff(-j);
  }

  // Remainder q-series: q^{-n} - sum_k s_k (1/lambda)^k; the negative powers
  // cancel by construction, and we zero them exactly to avoid rounding dust
  // being amplified by q^{-j} during evaluation.
  NomeSeries<T> rem = NomeSeries<T>(-n, std::vector<cplx<T>>(
      static_cast<std::size_t>(tb.truncation_order + n) + 1, cplx<T>(0)));
  rem.coeffs[0] = cplx<T>(1);
  for (int k = 1; k <= n; ++k)
    rem = ns_sub(rem, ns_scale(pow_k[static_cast<std::size_t>(k - 1)],
                               sn.coeffs[static_cast<std::size_t>(k - 1)]));
  NomeSeries<T> rem_pos;
  rem_pos.min_order = 0;
  const int top = rem.min_order + rem.truncation_order();
  rem_pos.coeffs.assign(static_cast<std::size_t>(top) + 1, cplx<T>(0));
  for (int o = 0; o <= top; ++o) rem_pos.coeffs[static_cast<std::size_t>(o)] = rem.coeff(o);
  sn.remainder_series = std::move(rem_pos);
  return sn;
}

// Prefilled write-once cache for n = 1..n_max.
template <class T>
struct SnTable {
  std::vector<SnPolynomial<T>> polys;  // polys[n-1] = S_n

  SnTable() = default;
  SnTable(int n_max, const ModularTables<T>& tb) {
    polys.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) polys.push_back(sn_compute(n, tb));
  }
  const SnPolynomial<T>& at(int n) const {
    if (n < 1 || n > static_cast<int>(polys.size()))
      throw invalid_input_error("SnTable: n out of range");
    return polys[static_cast<std::size_t>(n - 1)];
  }
  int n_max() const { return static_cast<int>(polys.size()); }
};

// Re tau reduced to [-1, 1) (the remainder series is 2-periodic in tau).
template <class T>
cplx<T> mod2_shift(const cplx<T>& tau) {
  const T k = r_floor((tau.real() + T(1)) / T(2));
  return cplx<T>(tau.real() - T(2) * k, tau.imag());
}

// R_n(lambda(tau)) = e^{-i pi n tau} - S_n(1/lambda(tau)).  The function of
// lambda is single-valued, but e^{-i pi n tau} is only Gamma(2)-periodic, so
// tau is first reduced into D_2Theta to land on the branch where the
// principal parts actually cancel.  High in the half-plane the two terms
// agree to ~e^{pi n Im tau}; there the difference is formed from the
// remainder q-series instead (stable).  Lower down the direct difference is
// the accurate path.
template <class T>
cplx<T> sn_remainder(const SnPolynomial<T>& sn, const ModularTables<T>& tb, const cplx<T>& tau) {
  if (!(tau.imag() > T(0))) throw domain_error("sn_remainder: Im tau <= 0");
  const cplx<T> t0 = reduce_to_d2theta(tau);
  const cplx<T> ipi(T(0), pi_v<T>());
  if (t0.imag() >= T(1)) {
    // |q| <= e^{-pi} ~ 0.043: the remainder power series converges fast.
    const cplx<T> q = c_exp(ipi * t0);
    return ns_eval(sn.remainder_series, q);
  }
  const cplx<T> lam = lambda_eval(tb, t0);
  return c_exp(-ipi * T(sn.n) * t0) - sn.eval(cplx<T>(1) / lam);
}

}  // namespace hyperfour

#endif  // HYPERFOUR_SNPOLY_HPP
