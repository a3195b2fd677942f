#include "hyperfour/hfs.hpp"

#include <cmath>
#include <cstdlib>

namespace hyperfour {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
const cdouble kI(0.0, 1.0);
}  // namespace

void HfsCoefficients::set_a(int n, cdouble v) {
  if (n == 0) {
    a0 = v;
    return;
  }
  if (n < 0 && sided == Sided::one_sided_holomorphic)
    throw invalid_input_error("HfsCoefficients: negative a-index on a one-sided series");
  a[n] = v;
}

void HfsCoefficients::set_b(int n, cdouble v) {
  if (n == 0) throw invalid_input_error("HfsCoefficients: b_0 is identically zero");
  if (n < 0 && sided == Sided::one_sided_holomorphic)
    throw invalid_input_error("HfsCoefficients: negative b-index on a one-sided series");
  b[n] = v;
}

cdouble HfsCoefficients::get_a(int n) const {
  if (n == 0) return a0;
  auto it = a.find(n);
  return it == a.end() ? cdouble(0.0) : it->second;
}

cdouble HfsCoefficients::get_b(int n) const {
  auto it = b.find(n);
  return it == b.end() ? cdouble(0.0) : it->second;
}

int HfsCoefficients::support_bound() const {
  int m = 0;
  for (const auto& [n, v] : a) m = std::max(m, std::abs(n));
  for (const auto& [n, v] : b) m = std::max(m, std::abs(n));
  return m;
}

cdouble hfs_eval(const HfsCoefficients& c, cdouble tau) {
  if (!(tau.imag() > 0.0)) throw domain_error("hfs_eval: Im tau <= 0");
  if (c.skew.type != Skew::Type::none && c.sided == Sided::two_sided_harmonic)
    throw invalid_input_error("hfs_eval: skewed two-sided series not supported");

  const cdouble ipi(0.0, kPi);
  const cdouble taub = std::conj(tau);
  cdouble acc = 0.0;

  if (c.skew.type == Skew::Type::exponential) {
    const double w1 = c.skew.omega1, w2 = c.skew.omega2;
    acc = c.a0 * std::exp(ipi * w1 * tau);
    for (const auto& [n, v] : c.a) acc += v * std::exp(ipi * (double(n) + w1) * tau);
    for (const auto& [n, v] : c.b) acc += v * std::exp(-ipi * (double(n) + w2) / tau);
    return acc;
  }

  // Power factor (tau/i)^{-beta} on the b-part, principal branch; Re(tau/i)
  // = Im tau > 0, so the branch cut is never met.
  cdouble bfac = 1.0;
  if (c.skew.type == Skew::Type::power) bfac = std::pow(tau / kI, cdouble(-c.skew.beta));

  acc = c.a0;
  for (const auto& [n, v] : c.a)
    acc += v * std::exp(ipi * double(n) * (n > 0 ? tau : taub));
  for (const auto& [n, v] : c.b)
    acc += v * bfac * std::exp(-ipi * double(n) / (n > 0 ? tau : taub));
  return acc;
}

HfsCoefficients exceptional_series(const std::vector<cdouble>& poly, int N,
                                   const ModularTablesD& tb) {
  if (!poly.empty() && std::abs(poly[0]) != 0.0)
    throw invalid_input_error("exceptional_series: P(0) != 0");
  const int deg = static_cast<int>(poly.size()) - 1;
  if (4 * deg > N) throw invalid_input_error("exceptional_series: deg P > N/4");
  if (tb.truncation_order < N)
    throw invalid_input_error("exceptional_series: tables truncation order < N");

  // P(1) by direct summation.
  cdouble p1 = 0.0;
  for (const auto& v : poly) p1 += v;

  // P(lambda) and P(1 - lambda) as q-series, by Horner on series.
  const NomeSeriesD one = NomeSeriesD::constant(1.0, tb.truncation_order);
  const NomeSeriesD one_minus = ns_sub(one, tb.lambda);
  NomeSeriesD p_lam = NomeSeriesD::constant(0.0, tb.truncation_order);
  NomeSeriesD p_one_minus = p_lam;
  for (int k = deg; k >= 0; --k) {
    p_lam = ns_mul(p_lam, tb.lambda);
    p_one_minus = ns_mul(p_one_minus, one_minus);
    const NomeSeriesD ck = NomeSeriesD::constant(poly[(std::size_t)k], tb.truncation_order);
    p_lam = ns_add(p_lam, ck);
    p_one_minus = ns_add(p_one_minus, ck);
  }

  HfsCoefficients c;
  c.sided = Sided::one_sided_holomorphic;
  c.a0 = -p1;
  for (int n = 1; n <= N; ++n) {
    const cdouble an = p_lam.coeff(n);
    // b-series: -a0 - P(1 - lambda); its constant term vanishes since
    // a0 = -P(1).
    const cdouble bn = -p_one_minus.coeff(n);
    if (std::abs(an) != 0.0) c.a[n] = an;
    if (std::abs(bn) != 0.0) c.b[n] = bn;
  }
  return c;
}

HfsCoefficients schwarz_transform(const HfsCoefficients& c) {
  if (c.skew.type != Skew::Type::none)
    throw invalid_input_error("schwarz_transform: skewed input");
  if (c.sided != Sided::two_sided_harmonic)
    throw invalid_input_error("schwarz_transform: input must be two-sided");
  if (!c.b.empty())
    throw invalid_input_error("schwarz_transform: input must carry c_n in the a-map only");

  HfsCoefficients out;
  out.sided = Sided::one_sided_holomorphic;
  out.a0 = c.a0;
  for (const auto& [n, v] : c.a) {
    if (n > 0)
      out.a[n] = v;
    else
      out.b[-n] = v;  // e_n(1/conj tau) = e^{-i pi (-n) / tau} for n < 0
  }
  return out;
}

namespace {

// Multiplier series like theta00^{-2 beta} have subexponentially growing
// coefficients (theta00 is zero-free on the q-disk but blows up at its
// boundary), so double-precision convolutions would lose ~7 digits through
// cancellation on the way back.  The conversions therefore run their series
// arithmetic in quad precision and only the results are narrowed.

// Quad tables at the order of the caller's double tables, cached per order.
const ModularTablesQ& quad_tables(int trunc) {
  static ModularTablesQ cache;
  if (cache.truncation_order != trunc) cache = build_tables<f128>(trunc);
  return cache;
}

// Multiply the finitely supported coefficients (with optional constant term)
// by a q-series multiplier, truncating at the table order.  Inputs prefer
// the quad shadow when present; outputs fill both representations.
void series_multiply(const NomeSeriesQ& mult, cquad c0, const std::map<int, cquad>& cs,
                     int trunc, cquad* out_c0, std::map<int, cquad>* out_hi,
                     std::map<int, cdouble>* out_lo) {
  std::vector<cquad> in(static_cast<std::size_t>(trunc) + 1, cquad(0));
  in[0] = c0;
  for (const auto& [n, v] : cs) {
    if (n < 0 || n > trunc)
      throw invalid_input_error("skew conversion: support exceeds table order");
    in[static_cast<std::size_t>(n)] += v;
  }
  std::vector<cquad> out(static_cast<std::size_t>(trunc) + 1, cquad(0));
  for (int i = 0; i <= trunc; ++i) {
    if (c_abs(in[(std::size_t)i]) == f128(0)) continue;
    for (int j = 0; i + j <= trunc; ++j)
      out[static_cast<std::size_t>(i + j)] += in[(std::size_t)i] * mult.coeff(j);
  }
  *out_c0 = out[0];
  for (int n = 1; n <= trunc; ++n) {
    const cdouble v = to_cdouble(out[(std::size_t)n]);
    if (std::abs(v) > 0.0) {
      (*out_hi)[n] = out[(std::size_t)n];
      (*out_lo)[n] = v;
    }
  }
}

cquad widen(cdouble v) { return cquad(f128(v.real()), f128(v.imag())); }

std::map<int, cquad> widen_map(const std::map<int, cdouble>& m) {
  std::map<int, cquad> r;
  for (const auto& [n, v] : m) r[n] = widen(v);
  return r;
}

// Quad view of the coefficients: the shadow when attached, else widened.
struct QuadView {
  cquad a0;
  std::map<int, cquad> a, b;
};
QuadView quad_view(const HfsCoefficients& c) {
  if (c.shadow) return {c.shadow->a0, c.shadow->a, c.shadow->b};
  return {widen(c.a0), widen_map(c.a), widen_map(c.b)};
}

}  // namespace

HfsCoefficients pskew_convert(const HfsCoefficients& c, double beta, SkewDirection dir,
                              const ModularTablesD& tb) {
  if (c.sided != Sided::one_sided_holomorphic)
    throw invalid_input_error("pskew_convert: one-sided series required");
  const double sign = (dir == SkewDirection::to_skewed) ? 1.0 : -1.0;
  const auto& tbq = quad_tables(tb.truncation_order);
  const NomeSeriesQ mult = theta_pow_series(tbq, sign * beta);

  // a0 + f1 = theta00^{2 beta} (a0 + g1) with the constant unchanged; the
  // multiplier's constant term is 1, so the conversion leaves a0 alone and
  // folds the rest of the product into the n >= 1 coefficients.
  HfsCoefficients out;
  out.sided = c.sided;
  out.skew.type = (dir == SkewDirection::to_skewed) ? Skew::Type::power : Skew::Type::none;
  out.skew.beta = (dir == SkewDirection::to_skewed) ? beta : 0.0;

  const QuadView in = quad_view(c);
  auto sh = std::make_shared<HfsShadow>();
  series_multiply(mult, in.a0, in.a, tb.truncation_order, &sh->a0, &sh->a, &out.a);
  cquad b0(0);
  series_multiply(mult, cquad(0), in.b, tb.truncation_order, &b0, &sh->b, &out.b);
  out.a0 = to_cdouble(sh->a0);  // equals c.a0 (constant term of the multiplier is 1)
  out.shadow = std::move(sh);
  return out;
}

HfsCoefficients expskew_convert(const HfsCoefficients& c, double omega1, double omega2,
                                SkewDirection dir, const ModularTablesD& tb) {
  if (c.sided != Sided::one_sided_holomorphic)
    throw invalid_input_error("expskew_convert: one-sided series required");
  const double s = (dir == SkewDirection::to_skewed) ? 1.0 : -1.0;
  const auto& tbq = quad_tables(tb.truncation_order);
  // a-part multiplier: [e^{-i pi w1 tau} lambda^{w1}] (1-lambda)^{w2};
  // b-part multiplier: [e^{-i pi w2 tau} lambda^{w2}] (1-lambda)^{w1}.
  auto [lp1, om1] = lambda_pow_series(tbq, s * omega1);
  auto [lp2, om2] = lambda_pow_series(tbq, s * omega2);
  const NomeSeriesQ mult_a = ns_mul(lp1, om2);
  const NomeSeriesQ mult_b = ns_mul(lp2, om1);

  HfsCoefficients out;
  out.sided = c.sided;
  out.skew.type = (dir == SkewDirection::to_skewed) ? Skew::Type::exponential : Skew::Type::none;
  if (dir == SkewDirection::to_skewed) {
    out.skew.omega1 = omega1;
    out.skew.omega2 = omega2;
  }
  const QuadView in = quad_view(c);
  auto sh = std::make_shared<HfsShadow>();
  series_multiply(mult_a, in.a0, in.a, tb.truncation_order, &sh->a0, &sh->a, &out.a);
  cquad b0(0);
  series_multiply(mult_b, cquad(0), in.b, tb.truncation_order, &b0, &sh->b, &out.b);
  out.a0 = to_cdouble(sh->a0);  // a0 = 16^{w1} a0_tilde through the multiplier constant
  out.shadow = std::move(sh);
  return out;
}

GrowthReport growth_envelope_check(const HfsCoefficients& c, double beta,
                                   const std::vector<double>& y_grid) {
  if (c.sided != Sided::one_sided_holomorphic)
    throw invalid_input_error("growth_envelope_check: one-sided series required");
  auto partial = [&c](double y) {
    cdouble s = c.a0;
    for (const auto& [n, v] : c.a) s += v * std::exp(-kPi * double(n) * y);
    return std::abs(s);
  };
  double y_max = 0.0;
  for (double y : y_grid) y_max = std::max(y_max, y);
  GrowthReport rep;
  rep.fitted_C = partial(y_max) / std::exp(kPi * beta / y_max);
  if (rep.fitted_C == 0.0) rep.fitted_C = 1.0;
  for (double y : y_grid) {
    const double ratio = partial(y) / (rep.fitted_C * std::exp(kPi * beta / y));
    rep.ratios.emplace_back(y, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  return rep;
}

HarmonicSplit split_harmonic(const HfsCoefficients& c) {
  if (c.skew.type != Skew::Type::none)
    throw invalid_input_error("split_harmonic: skewed input");
  HarmonicSplit sp;
  sp.holo.sided = sp.anti.sided = Sided::two_sided_harmonic;
  for (const auto& [n, v] : c.a) (n > 0 ? sp.holo : sp.anti).a[n] = v;
  for (const auto& [n, v] : c.b) (n > 0 ? sp.holo : sp.anti).b[n] = v;
  // Renormalize so each part vanishes at i; both exponentials equal
  // e^{-pi |n|} there.
  const cdouble i(0.0, 1.0);
  sp.holo.a0 = -(hfs_eval(sp.holo, i));
  sp.anti.a0 = -(hfs_eval(sp.anti, i));
  sp.k = hfs_eval(c, i);
  return sp;
}

}  // namespace hyperfour
