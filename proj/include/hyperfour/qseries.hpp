// Truncated formal Laurent/power series in the nome q = e^{i pi tau}.
//
// A NomeSeries stores coefficients of q^{min_order+k}, k = 0..T, and is exact
// modulo q^{min_order+T+1}.  All arithmetic tracks the provable truncation
// order of the result.  The template parameter is the coefficient real type
// (double for general use, __float128 for the contour-quadrature core, where
// the lambda coefficients must be accurate to quad precision).
#ifndef HYPERFOUR_QSERIES_HPP
#define HYPERFOUR_QSERIES_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "hyperfour/errors.hpp"
#include "hyperfour/fp.hpp"

namespace hyperfour {

template <class T>
struct NomeSeries {
  int min_order = 0;                 // lowest power of q present
  std::vector<cplx<T>> coeffs;       // coeffs[k] multiplies q^{min_order+k}

  NomeSeries() = default;
  NomeSeries(int m, std::vector<cplx<T>> c) : min_order(m), coeffs(std::move(c)) {}

  // Series is exact modulo q^{min_order+truncation_order+1}.
  int truncation_order() const { return static_cast<int>(coeffs.size()) - 1; }

  // Constant series.
  static NomeSeries constant(const cplx<T>& v, int trunc) {
    std::vector<cplx<T>> c(static_cast<std::size_t>(trunc) + 1);
    c[0] = v;
    return NomeSeries(0, std::move(c));
  }

  cplx<T> coeff(int order) const {
    const int k = order - min_order;
    if (k < 0 || k > truncation_order()) return cplx<T>(0);
    return coeffs[static_cast<std::size_t>(k)];
  }
};

using NomeSeriesD = NomeSeries<double>;
using NomeSeriesQ = NomeSeries<f128>;

namespace detail {

template <class T>
void check_nonempty(const NomeSeries<T>& a, const char* op) {
  if (a.coeffs.empty())
    throw invalid_series_error(std::string(op) + ": empty series");
}

}  // namespace detail

// --- ring operations --------------------------------------------------------

template <class T>
NomeSeries<T> ns_mul(const NomeSeries<T>& a, const NomeSeries<T>& b) {
  detail::check_nonempty(a, "ns_mul");
  detail::check_nonempty(b, "ns_mul");
  // Product of a (exact mod q^{ma+Ta+1}) and b (exact mod q^{mb+Tb+1}) is
  // exact mod q^{ma+mb+min(Ta,Tb)+1}.
  const int t = std::min(a.truncation_order(), b.truncation_order());
  NomeSeries<T> r;
  r.min_order = a.min_order + b.min_order;
  r.coeffs.assign(static_cast<std::size_t>(t) + 1, cplx<T>(0));
  for (int i = 0; i <= t; ++i) {
    const cplx<T>& ai = a.coeffs[static_cast<std::size_t>(i)];
    if (ai == cplx<T>(0)) continue;
    const int jmax = t - i;
    for (int j = 0; j <= jmax; ++j)
      r.coeffs[static_cast<std::size_t>(i + j)] += ai * b.coeffs[static_cast<std::size_t>(j)];
  }
  return r;
}

template <class T>
NomeSeries<T> ns_add(const NomeSeries<T>& a, const NomeSeries<T>& b) {
  detail::check_nonempty(a, "ns_add");
  detail::check_nonempty(b, "ns_add");
  const int m = std::min(a.min_order, b.min_order);
  // Exact modulo the smaller of the two exactness bounds.
  const int top = std::min(a.min_order + a.truncation_order(),
                           b.min_order + b.truncation_order());
  NomeSeries<T> r;
  r.min_order = m;
  r.coeffs.assign(static_cast<std::size_t>(top - m) + 1, cplx<T>(0));
  for (int o = m; o <= top; ++o)
    r.coeffs[static_cast<std::size_t>(o - m)] = a.coeff(o) + b.coeff(o);
  return r;
}

template <class T>
NomeSeries<T> ns_scale(const NomeSeries<T>& a, const cplx<T>& s) {
  NomeSeries<T> r = a;
  for (auto& c : r.coeffs) c *= s;
  return r;
}

template <class T>
NomeSeries<T> ns_sub(const NomeSeries<T>& a, const NomeSeries<T>& b) {
  return ns_add(a, ns_scale(b, cplx<T>(-1)));
}

// Multiply by the monomial q^k (exact).
template <class T>
NomeSeries<T> ns_shift(const NomeSeries<T>& a, int k) {
  NomeSeries<T> r = a;
  r.min_order += k;
  return r;
}

template <class T>
NomeSeries<T> ns_inv(const NomeSeries<T>& a) {
  detail::check_nonempty(a, "ns_inv");
  if (a.coeffs[0] == cplx<T>(0))
    throw invalid_series_error("ns_inv: zero leading coefficient");
  const int t = a.truncation_order();
  NomeSeries<T> r;
  r.min_order = -a.min_order;
  r.coeffs.assign(static_cast<std::size_t>(t) + 1, cplx<T>(0));
  const cplx<T> inv0 = cplx<T>(1) / a.coeffs[0];
  r.coeffs[0] = inv0;
  for (int n = 1; n <= t; ++n) {
    cplx<T> s(0);
    for (int j = 1; j <= n; ++j)
      s += a.coeffs[static_cast<std::size_t>(j)] * r.coeffs[static_cast<std::size_t>(n - j)];
    r.coeffs[static_cast<std::size_t>(n)] = -inv0 * s;
  }
  return r;
}

// --- exp / log / pow --------------------------------------------------------

// exp of a series with zero constant term and min_order >= 0.
template <class T>
NomeSeries<T> ns_exp(const NomeSeries<T>& a) {
  detail::check_nonempty(a, "ns_exp");
  if (a.min_order < 0)
    throw invalid_series_error("ns_exp: negative min_order");
  const int t = a.min_order + a.truncation_order();
  if (a.min_order == 0 && a.coeffs[0] != cplx<T>(0))
    throw invalid_series_error("ns_exp: nonzero constant term");
  NomeSeries<T> r;
  r.min_order = 0;
  r.coeffs.assign(static_cast<std::size_t>(t) + 1, cplx<T>(0));
  r.coeffs[0] = cplx<T>(1);
  // n b_n = sum_{k=1..n} k a_k b_{n-k}  (from b' = a' b).
  for (int n = 1; n <= t; ++n) {
    cplx<T> s(0);
    for (int k = 1; k <= n; ++k)
      s += T(k) * a.coeff(k) * r.coeffs[static_cast<std::size_t>(n - k)];
    r.coeffs[static_cast<std::size_t>(n)] = s / T(n);
  }
  return r;
}

// log of a series with constant term 1 (min_order must be 0).
template <class T>
NomeSeries<T> ns_log(const NomeSeries<T>& a) {
  detail::check_nonempty(a, "ns_log");
  if (a.min_order != 0 || a.coeffs[0] != cplx<T>(1))
    throw invalid_series_error("ns_log: constant term must be exactly 1");
  const int t = a.truncation_order();
  NomeSeries<T> r;
  r.min_order = 0;
  r.coeffs.assign(static_cast<std::size_t>(t) + 1, cplx<T>(0));
  // f_n = a_n - (1/n) sum_{k=1..n-1} k f_k a_{n-k}  (from a' = f' a).
  for (int n = 1; n <= t; ++n) {
    cplx<T> s(0);
    for (int k = 1; k < n; ++k)
      s += T(k) * r.coeffs[static_cast<std::size_t>(k)] * a.coeffs[static_cast<std::size_t>(n - k)];
    r.coeffs[static_cast<std::size_t>(n)] = a.coeffs[static_cast<std::size_t>(n)] - s / T(n);
  }
  return r;
}

// a^alpha with principal-branch leading-coefficient power.  The leading
// monomial power q^{min_order*alpha} must stay integer-ordered: fractional
// monomials are never folded into the coefficient array, so min_order*alpha
// must be an integer (callers carry fractional prefactors explicitly).
template <class T>
NomeSeries<T> ns_pow(const NomeSeries<T>& a, const cplx<T>& alpha) {
  detail::check_nonempty(a, "ns_pow");
  const cplx<T> c0 = a.coeffs[0];
  if (c0 == cplx<T>(0))
    throw invalid_series_error("ns_pow: zero leading coefficient");
  const T mo_alpha_re = T(a.min_order) * alpha.real();
  const T mo_alpha_im = T(a.min_order) * alpha.imag();
  const T rounded = r_floor(mo_alpha_re + T(0.5));
  if (r_abs(mo_alpha_re - rounded) > T(1e-9) || r_abs(mo_alpha_im) > T(1e-9))
    throw invalid_series_error(
        "ns_pow: min_order*alpha is not an integer; carry the fractional "
        "monomial as an explicit prefactor");
  const int m_out = static_cast<int>(to_double(rounded));
  // Normalized tail 1 + u.
  NomeSeries<T> tail;
  tail.min_order = 0;
  tail.coeffs.resize(a.coeffs.size());
  const cplx<T> inv0 = cplx<T>(1) / c0;
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) tail.coeffs[k] = a.coeffs[k] * inv0;
  tail.coeffs[0] = cplx<T>(1);  // kill rounding residue exactly
  NomeSeries<T> r = ns_exp(ns_scale(ns_log(tail), alpha));
  r = ns_scale(r, c_pow(c0, alpha));
  r.min_order = m_out;
  return r;
}

template <class T>
NomeSeries<T> ns_pow(const NomeSeries<T>& a, T alpha) {
  return ns_pow(a, cplx<T>(alpha));
}

// --- evaluation -------------------------------------------------------------

template <class T>
struct NsEval {
  cplx<T> value;
  T tail_bound;  // geometric majorant of the dropped tail
};

template <class T>
NomeSeries<T> ns_derivative_q(const NomeSeries<T>& a) {
  detail::check_nonempty(a, "ns_derivative_q");
  NomeSeries<T> r;
  r.min_order = a.min_order - 1;
  r.coeffs.resize(a.coeffs.size());
  for (int k = 0; k <= a.truncation_order(); ++k)
    r.coeffs[static_cast<std::size_t>(k)] = T(a.min_order + k) * a.coeffs[static_cast<std::size_t>(k)];
  return r;
}

// Integer power of a complex number by repeated squaring (n may be negative).
template <class T>
cplx<T> c_ipow(cplx<T> z, int n) {
  bool neg = n < 0;
  unsigned long e = neg ? static_cast<unsigned long>(-(long)n) : static_cast<unsigned long>(n);
  cplx<T> r(1);
  while (e) {
    if (e & 1u) r *= z;
    z *= z;
    e >>= 1;
  }
  return neg ? cplx<T>(1) / r : r;
}

template <class T>
NsEval<T> ns_eval_with_tail(const NomeSeries<T>& a, const cplx<T>& q) {
  detail::check_nonempty(a, "ns_eval");
  const T aq = c_abs(q);
  if (aq >= T(1)) throw domain_error("ns_eval: |q| >= 1");
  // Horner on the stored window.
  cplx<T> v(0);
  for (std::size_t k = a.coeffs.size(); k-- > 0;) v = v * q + a.coeffs[k];
  v *= c_ipow(q, a.min_order);
  // Geometric majorant: growth ratio estimated from the last retained
  // coefficients, floored at 1 (coefficients of everything evaluated here
  // grow subexponentially, so this is a safe cap for small |q|).
  const int t = a.truncation_order();
  T mlast(0), growth(1);
  const int look = std::min(8, t);
  for (int k = t - look; k <= t; ++k) {
    if (k < 0) continue;
    mlast = std::max(mlast, c_abs(a.coeffs[static_cast<std::size_t>(k)]));
  }
  for (int k = t - look + 1; k <= t; ++k) {
    if (k <= 0) continue;
    const T lo = c_abs(a.coeffs[static_cast<std::size_t>(k - 1)]);
    const T hi = c_abs(a.coeffs[static_cast<std::size_t>(k)]);
    if (lo > T(0) && hi > T(0)) growth = std::max(growth, hi / lo);
  }
  T tail;
  const T gq = growth * aq;
  if (gq < T(1)) {
    tail = mlast * r_pow(aq, T(a.min_order + t + 1)) * gq / (T(1) - gq);
  } else {
    tail = T(1) / T(0);  // +inf: majorant diverges at this |q|
  }
  return {v, tail};
}

template <class T>
cplx<T> ns_eval(const NomeSeries<T>& a, const cplx<T>& q) {
  return ns_eval_with_tail(a, q).value;
}

// Widen a double series to quad (used only for plumbing/tests; the modular
// tables are built natively in each precision).
inline NomeSeriesQ ns_widen(const NomeSeriesD& a) {
  NomeSeriesQ r;
  r.min_order = a.min_order;
  r.coeffs.reserve(a.coeffs.size());
  for (const auto& c : a.coeffs) r.coeffs.push_back(to_cplx<f128>(c));
  return r;
}

inline NomeSeriesD ns_narrow(const NomeSeriesQ& a) {
  NomeSeriesD r;
  r.min_order = a.min_order;
  r.coeffs.reserve(a.coeffs.size());
  for (const auto& c : a.coeffs) r.coeffs.push_back(to_cdouble(c));
  return r;
}

}  // namespace hyperfour

#endif  // HYPERFOUR_QSERIES_HPP
