// Floating-point abstraction layer: the numerical core is templated over the
// real type so that the contour quadrature can run in quad precision
// (__float128) where the integrands span ~30 decimal orders of magnitude,
// while everything else uses plain double.
//
// std::complex<T> is used throughout; only its +,-,*,/ are relied upon for
// non-standard T, and the transcendental helpers below are provided instead
// of the std:: complex overloads (which are not defined for __float128).
#ifndef HYPERFOUR_FP_HPP
#define HYPERFOUR_FP_HPP

#include <quadmath.h>

#include <cmath>
#include <complex>

namespace hyperfour {

using f128 = __float128;

template <class T>
using cplx = std::complex<T>;

using cdouble = std::complex<double>;
using cquad = std::complex<f128>;

// --- scalar helpers, overloaded for double and __float128 -------------------

inline double r_exp(double x) { return std::exp(x); }
inline double r_log(double x) { return std::log(x); }
inline double r_sqrt(double x) { return std::sqrt(x); }
inline double r_sin(double x) { return std::sin(x); }
inline double r_cos(double x) { return std::cos(x); }
inline double r_atan2(double y, double x) { return std::atan2(y, x); }
inline double r_abs(double x) { return std::fabs(x); }
inline double r_hypot(double x, double y) { return std::hypot(x, y); }
inline double r_floor(double x) { return std::floor(x); }
inline double r_pow(double x, double y) { return std::pow(x, y); }

inline f128 r_exp(f128 x) { return expq(x); }
inline f128 r_log(f128 x) { return logq(x); }
inline f128 r_sqrt(f128 x) { return sqrtq(x); }
inline f128 r_sin(f128 x) { return sinq(x); }
inline f128 r_cos(f128 x) { return cosq(x); }
inline f128 r_atan2(f128 y, f128 x) { return atan2q(y, x); }
inline f128 r_abs(f128 x) { return fabsq(x); }
inline f128 r_hypot(f128 x, f128 y) { return hypotq(x, y); }
inline f128 r_floor(f128 x) { return floorq(x); }
inline f128 r_pow(f128 x, f128 y) { return powq(x, y); }

template <class T>
inline T pi_v();
template <>
inline double pi_v<double>() {
  return 3.14159265358979323846264338327950288;
}
template <>
inline f128 pi_v<f128>() {
  return M_PIq;
}

template <class T>
inline T eps_v();
template <>
inline double eps_v<double>() {
  return 2.220446049250313e-16;
}
template <>
inline f128 eps_v<f128>() {
  return FLT128_EPSILON;
}

// --- complex helpers --------------------------------------------------------

template <class T>
inline T c_abs(const cplx<T>& z) {
  return r_hypot(z.real(), z.imag());
}

template <class T>
inline T c_arg(const cplx<T>& z) {
  return r_atan2(z.imag(), z.real());
}

template <class T>
inline cplx<T> c_exp(const cplx<T>& z) {
  const T m = r_exp(z.real());
  return cplx<T>(m * r_cos(z.imag()), m * r_sin(z.imag()));
}

// Principal branch.
template <class T>
inline cplx<T> c_log(const cplx<T>& z) {
  return cplx<T>(r_log(c_abs(z)), c_arg(z));
}

template <class T>
inline cplx<T> c_sqrt(const cplx<T>& z) {
  // Principal square root via half-angle.
  const T m = r_sqrt(c_abs(z));
  const T a = c_arg(z) / T(2);
  return cplx<T>(m * r_cos(a), m * r_sin(a));
}

// Principal z^alpha for real alpha.
template <class T>
inline cplx<T> c_pow(const cplx<T>& z, T alpha) {
  return c_exp(alpha * c_log(z));
}

// Principal z^w for complex w.
template <class T>
inline cplx<T> c_pow(const cplx<T>& z, const cplx<T>& w) {
  return c_exp(w * c_log(z));
}

template <class T>
inline cplx<T> c_conj(const cplx<T>& z) {
  return cplx<T>(z.real(), -z.imag());
}

// Narrowing/widening between the two instantiations.
inline cdouble to_cdouble(const cquad& z) {
  return cdouble(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}
inline cdouble to_cdouble(const cdouble& z) { return z; }
inline double to_double(f128 x) { return static_cast<double>(x); }
inline double to_double(double x) { return x; }

template <class T>
inline cplx<T> to_cplx(const cdouble& z) {
  return cplx<T>(static_cast<T>(z.real()), static_cast<T>(z.imag()));
}

}  // namespace hyperfour

#endif  // HYPERFOUR_FP_HPP
