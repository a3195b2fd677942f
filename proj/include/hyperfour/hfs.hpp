// The hyperbolic Fourier series as a data object:
//   a0 + sum_{n != 0} ( a_n e^{i pi n tau} + b_n e^{-i pi n / tau} ),
// one-sided (holomorphic, n > 0) or two-sided (harmonic, with conjugated
// exponentials for n < 0), optionally power- or exponentially skewed.
// Coefficient maps are finitely supported.
#ifndef HYPERFOUR_HFS_HPP
#define HYPERFOUR_HFS_HPP

#include <map>
#include <memory>
#include <vector>

#include "hyperfour/errors.hpp"
#include "hyperfour/fp.hpp"
#include "hyperfour/modular.hpp"

namespace hyperfour {

enum class Sided { one_sided_holomorphic, two_sided_harmonic };

struct Skew {
  enum class Type { none, power, exponential };
  Type type = Type::none;
  double beta = 0.0;    // power skew
  double omega1 = 0.0;  // exponential skew
  double omega2 = 0.0;
};

// Quad-precision copy of the coefficient data.  Skew conversions keep one
// attached to their results: the inverse multiplier series (e.g.
// theta00^{-3}) have subexponentially growing coefficients, so a roundtrip
// through double-rounded intermediates would amplify the rounding by ~1e13.
struct HfsShadow {
  cquad a0{};
  std::map<int, cquad> a, b;
};

struct HfsCoefficients {
  cdouble a0{};
  std::map<int, cdouble> a;  // n != 0 (n > 0 if one-sided)
  std::map<int, cdouble> b;  // n != 0; b_0 is identically 0 and never stored
  Sided sided = Sided::one_sided_holomorphic;
  Skew skew{};
  std::shared_ptr<const HfsShadow> shadow;  // optional, see HfsShadow

  void set_a(int n, cdouble v);
  void set_b(int n, cdouble v);
  cdouble get_a(int n) const;
  cdouble get_b(int n) const;
  // Largest |n| with a stored coefficient.
  int support_bound() const;
};

cdouble hfs_eval(const HfsCoefficients& c, cdouble tau);

// One-sided null series from a polynomial P with P(0) = 0 (coefficient k of
// `poly` multiplies w^k; poly[0] must be 0): a0 = -P(1), a_n from P(lambda),
// b_n from -a0 - P(1 - lambda), truncated at N.
HfsCoefficients exceptional_series(const std::vector<cdouble>& poly, int N,
                                   const ModularTablesD& tb);

// Two-sided harmonic (coefficients in `a` over Z, `b` empty) -> one-sided
// holomorphic by reflecting the negative frequencies through the unit circle.
HfsCoefficients schwarz_transform(const HfsCoefficients& c);

enum class SkewDirection { to_skewed, to_plain };

HfsCoefficients pskew_convert(const HfsCoefficients& c, double beta, SkewDirection dir,
                              const ModularTablesD& tb);
HfsCoefficients expskew_convert(const HfsCoefficients& c, double omega1, double omega2,
                                SkewDirection dir, const ModularTablesD& tb);

// Checks |sum a_n e^{-pi n y}| <= C e^{pi beta / y} on the grid, with C
// fitted at the largest y.
struct GrowthReport {
  double fitted_C = 0.0;
  double max_ratio = 0.0;
  std::vector<std::pair<double, double>> ratios;  // (y, ratio)
};
GrowthReport growth_envelope_check(const HfsCoefficients& c, double beta,
                                   const std::vector<double>& y_grid);

// h = holo + anti + k with holo(i) = anti(i) = 0.
struct HarmonicSplit {
  HfsCoefficients holo;
  HfsCoefficients anti;
  cdouble k{};
};
HarmonicSplit split_harmonic(const HfsCoefficients& c);

}  // namespace hyperfour

#endif  // HYPERFOUR_HFS_HPP
