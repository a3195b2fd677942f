// Jacobi theta functions and the modular lambda function.
//
// lambda = theta10^4 / theta00^4 is evaluated anywhere on the upper
// half-plane by reducing tau to the standard fundamental region
// Im tau' >= sqrt(3)/2 with the full modular group (T: tau+1, S: -1/tau),
// evaluating the q-series there (|q| <= e^{-pi sqrt(3)/2} ~ 0.066, so 64
// terms are far more than enough), and pulling the value back through the
// exact Moebius actions
//     lambda(tau+1) = lambda/(lambda-1),   lambda(-1/tau) = 1 - lambda.
// The derivative follows by the chain rule through the same word.
#ifndef HYPERFOUR_MODULAR_HPP
#define HYPERFOUR_MODULAR_HPP

#include <utility>
#include <vector>

#include "hyperfour/errors.hpp"
#include "hyperfour/fp.hpp"
#include "hyperfour/qseries.hpp"

namespace hyperfour {

template <class T>
struct ModularTables {
  NomeSeries<T> theta00;         // 1 + 2q + 2q^4 + 2q^9 + ...
  NomeSeries<T> theta10_tail;    // theta10 = 2 q^{1/4} * theta10_tail
  NomeSeries<T> lambda;          // min_order 1, leading coefficient 16
  NomeSeries<T> lambda_prime_q;  // d lambda / d q
  NomeSeries<T> L00;             // log theta00 (constant term 0)
  NomeSeries<T> L10_tail;        // log theta10_tail (1-periodic part of log theta10)
  int truncation_order = 0;
};

using ModularTablesD = ModularTables<double>;
using ModularTablesQ = ModularTables<f128>;

template <class T>
ModularTables<T> build_tables(int trunc) {
  if (trunc < 8) throw invalid_input_error("build_tables: T >= 8 required");
  ModularTables<T> tb;
  tb.truncation_order = trunc;

  std::vector<cplx<T>> t00(static_cast<std::size_t>(trunc) + 1, cplx<T>(0));
  t00[0] = cplx<T>(1);
  for (int n = 1; n * n <= trunc; ++n) t00[static_cast<std::size_t>(n * n)] = cplx<T>(2);
  tb.theta00 = NomeSeries<T>(0, std::move(t00));

  std::vector<cplx<T>> t10(static_cast<std::size_t>(trunc) + 1, cplx<T>(0));
  for (int n = 0; n * (n + 1) <= trunc; ++n) t10[static_cast<std::size_t>(n * (n + 1))] = cplx<T>(1);
  tb.theta10_tail = NomeSeries<T>(0, std::move(t10));

  // theta10^4 = 16 q * theta10_tail^4 (the q^{1/4} prefactor turns integer).
  const NomeSeries<T> t00_2 = ns_mul(tb.theta00, tb.theta00);
  const NomeSeries<T> t00_4 = ns_mul(t00_2, t00_2);
  const NomeSeries<T> t10_2 = ns_mul(tb.theta10_tail, tb.theta10_tail);
  const NomeSeries<T> t10_4 = ns_mul(t10_2, t10_2);
  NomeSeries<T> lam = ns_mul(t10_4, ns_inv(t00_4));
  lam = ns_scale(lam, cplx<T>(16));
  lam = ns_shift(lam, 1);
  tb.lambda = std::move(lam);
  tb.lambda_prime_q = ns_derivative_q(tb.lambda);

  tb.L00 = ns_log(tb.theta00);
  tb.L10_tail = ns_log(tb.theta10_tail);
  return tb;
}

namespace detail {

// One letter of the reduction word, with the tau value *before* the letter
// was applied (needed to unwind the S-derivative).
template <class T>
struct ReductionStep {
  bool is_s;        // true: S (tau -> -1/tau); false: T^shift (tau -> tau - shift)
  long shift;       // for T-steps
  cplx<T> tau_pre;  // tau before this step
};

// Reduce tau into {|Re| <= 1/2 (+eps), |tau| >= 1 (-eps)}.
template <class T>
cplx<T> reduce_full_modular(cplx<T> tau, std::vector<ReductionStep<T>>& word) {
  constexpr long kStepCap = 1000000;
  const T one_minus = T(1) - T(16) * eps_v<T>();
  long steps = 0;
  for (;;) {
    if (++steps > kStepCap)
      throw reduction_overflow_error("lambda_eval: reduction exceeded step cap");
    const T re = tau.real();
    const long n = static_cast<long>(to_double(r_floor(re + T(0.5))));
    if (n != 0) {
      word.push_back({false, n, tau});
      tau -= cplx<T>(T(n));
    }
    if (c_abs(tau) < one_minus) {
      word.push_back({true, 0, tau});
      tau = cplx<T>(-1) / tau;
    } else {
      break;
    }
  }
  return tau;
}

}  // namespace detail

// lambda and d lambda / d tau in one pass.
template <class T>
std::pair<cplx<T>, cplx<T>> lambda_eval_d(const ModularTables<T>& tb, cplx<T> tau) {
  if (!(tau.imag() > T(0))) throw domain_error("lambda_eval: Im tau <= 0");
  std::vector<detail::ReductionStep<T>> word;
  const cplx<T> tau0 = detail::reduce_full_modular(tau, word);
  // Base evaluation: q = e^{i pi tau0}, dlambda/dtau = i pi q dlambda/dq.
  const cplx<T> ipi(T(0), pi_v<T>());
  const cplx<T> q = c_exp(ipi * tau0);
  cplx<T> val = ns_eval(tb.lambda, q);
  cplx<T> der = ipi * q * ns_eval(tb.lambda_prime_q, q);
  // Unwind the word in reverse.
  for (std::size_t i = word.size(); i-- > 0;) {
    const auto& st = word[i];
    if (st.is_s) {
      // lambda(tau_pre) = 1 - lambda(-1/tau_pre)
      val = cplx<T>(1) - val;
      der = -der / (st.tau_pre * st.tau_pre);
    } else if (st.shift & 1) {
      // lambda(tau+1) = lambda/(lambda-1) is an involution, so only the
      // parity of the shift matters; its derivative is -1/(lambda-1)^2.
      const cplx<T> d = val - cplx<T>(1);
      val = val / d;
      der = -der / (d * d);
    }
  }
  return {val, der};
}

template <class T>
cplx<T> lambda_eval(const ModularTables<T>& tb, const cplx<T>& tau) {
  return lambda_eval_d(tb, tau).first;
}

template <class T>
cplx<T> lambda_prime_eval(const ModularTables<T>& tb, const cplx<T>& tau) {
  return lambda_eval_d(tb, tau).second;
}

// Reduce tau into the double fundamental domain
//   D_2Theta = { |Re tau| < 1, |2 tau - 1| > 1, |2 tau + 1| > 1 }
// using the Gamma(2) generators tau -> tau+2 and tau -> tau/(2 tau +- 1).
// lambda is Gamma(2)-invariant, so its value is unchanged.
template <class T>
cplx<T> reduce_to_d2theta(cplx<T> tau) {
  const T btol = T(1e-12);
  for (int guard = 0; guard < 1000000; ++guard) {
    // Re into [-1, 1).
    const T k = r_floor((tau.real() + T(1)) / T(2));
    tau -= cplx<T>(T(2) * k);
    if (c_abs(T(2) * tau + cplx<T>(1)) < T(1) - btol) {
      tau = tau / (T(2) * tau + cplx<T>(1));  // increases Im inside the left disk
    } else if (c_abs(T(2) * tau - cplx<T>(1)) < T(1) - btol) {
      tau = tau / (cplx<T>(1) - T(2) * tau);  // increases Im inside the right disk
    } else {
      return tau;
    }
  }
  throw reduction_overflow_error("reduce_to_d2theta: reduction stuck");
}

// Direct series evaluation of theta00; accurate for Im tau >= ~0.35 where
// |q| <= 1/3 (used for the functional-equation checks, not for reduction).
template <class T>
cplx<T> theta00_eval(const ModularTables<T>& tb, const cplx<T>& tau) {
  if (!(tau.imag() > T(0))) throw domain_error("theta00_eval: Im tau <= 0");
  const cplx<T> q = c_exp(cplx<T>(T(0), pi_v<T>()) * tau);
  return ns_eval(tb.theta00, q);
}

// q-series of theta00^{2 beta} = exp(2 beta L00).
template <class T>
NomeSeries<T> theta_pow_series(const ModularTables<T>& tb, double beta) {
  return ns_exp(ns_scale(tb.L00, cplx<T>(T(2) * T(beta))));
}

// Pair (e^{-i pi omega tau} lambda^omega as q-series with constant 16^omega,
//       (1 - lambda)^omega as q-series with constant 1).
template <class T>
std::pair<NomeSeries<T>, NomeSeries<T>> lambda_pow_series(const ModularTables<T>& tb,
                                                          double omega) {
  // e^{-i pi omega tau} lambda^omega = 16^omega (lambda/(16 q))^omega,
  // where lambda/(16 q) is a q-series with constant term 1.
  NomeSeries<T> u = ns_shift(ns_scale(tb.lambda, cplx<T>(T(1) / T(16))), -1);
  NomeSeries<T> first = ns_pow(u, cplx<T>(T(omega)));
  first = ns_scale(first, cplx<T>(r_pow(T(16), T(omega))));
  // (1 - lambda)^omega, constant term 1.
  NomeSeries<T> one_minus =
      ns_sub(NomeSeries<T>::constant(cplx<T>(1), tb.truncation_order), tb.lambda);
  NomeSeries<T> second = ns_pow(one_minus, cplx<T>(T(omega)));
  return {std::move(first), std::move(second)};
}

// --- double-only extras (defined in src/modular.cpp) ------------------------

// Inverse of lambda on the slit plane C \ (]-inf,0] u [1,+inf[), returning
// the preimage in the double fundamental domain D_2Theta.
cdouble lambda_inverse(const ModularTablesD& tb, cdouble zeta);

}  // namespace hyperfour

#endif  // HYPERFOUR_MODULAR_HPP
