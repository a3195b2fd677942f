#include "hyperfour/io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace hyperfour {

using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex_csv(cdouble v) {
  return format_number(v.real()) + "," + format_number(v.imag());
}

namespace {

json complex_to_json(cdouble v) { return json::array({v.real(), v.imag()}); }

cdouble complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw invalid_input_error("coefficient JSON: complex values must be [re, im]");
  return cdouble(j[0].get<double>(), j[1].get<double>());
}

json coeff_map_to_json(const std::map<int, cdouble>& m) {
  json j = json::object();
  for (const auto& [n, v] : m) j[std::to_string(n)] = complex_to_json(v);
  return j;
}

std::map<int, cdouble> coeff_map_from_json(const json& j) {
  std::map<int, cdouble> m;
  for (auto it = j.begin(); it != j.end(); ++it)
    m[std::stoi(it.key())] = complex_from_json(it.value());
  return m;
}

}  // namespace

std::string hfs_to_json(const HfsCoefficients& c) {
  json j;
  j["a0"] = complex_to_json(c.a0);
  j["a"] = coeff_map_to_json(c.a);
  j["b"] = coeff_map_to_json(c.b);
  j["sided"] = (c.sided == Sided::one_sided_holomorphic) ? "one" : "two";
  json sk;
  switch (c.skew.type) {
    case Skew::Type::none:
      sk["type"] = "none";
      break;
    case Skew::Type::power:
      sk["type"] = "power";
      sk["beta"] = c.skew.beta;
      break;
    case Skew::Type::exponential:
      sk["type"] = "exponential";
      sk["omega1"] = c.skew.omega1;
      sk["omega2"] = c.skew.omega2;
      break;
  }
  j["skew"] = sk;
  return j.dump(2) + "\n";
}

HfsCoefficients hfs_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw invalid_input_error(std::string("coefficient JSON parse error: ") + e.what());
  }
  HfsCoefficients c;
  if (j.contains("a0")) c.a0 = complex_from_json(j["a0"]);
  c.sided = (j.value("sided", std::string("one")) == "two") ? Sided::two_sided_harmonic
                                                            : Sided::one_sided_holomorphic;
  if (j.contains("a")) c.a = coeff_map_from_json(j["a"]);
  if (j.contains("b")) c.b = coeff_map_from_json(j["b"]);
  if (c.b.count(0)) throw invalid_input_error("coefficient JSON: b_0 must not be present");
  if (j.contains("skew")) {
    const auto& sk = j["skew"];
    const std::string type = sk.value("type", std::string("none"));
    if (type == "power") {
      c.skew.type = Skew::Type::power;
      c.skew.beta = sk.value("beta", 0.0);
    } else if (type == "exponential") {
      c.skew.type = Skew::Type::exponential;
      c.skew.omega1 = sk.value("omega1", 0.0);
      c.skew.omega2 = sk.value("omega2", 0.0);
    } else if (type != "none") {
      throw invalid_input_error("coefficient JSON: unknown skew type " + type);
    }
  }
  return c;
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto p1 = spec.find(':');
  const auto p2 = spec.find(':', p1 == std::string::npos ? p1 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw invalid_input_error("grid spec must be start:stop:step");
  double start, stop, step;
  try {
    start = std::stod(spec.substr(0, p1));
    stop = std::stod(spec.substr(p1 + 1, p2 - p1 - 1));
    step = std::stod(spec.substr(p2 + 1));
  } catch (const std::exception&) {
    throw invalid_input_error("grid spec must be numeric start:stop:step");
  }
  if (!(step > 0.0)) throw invalid_input_error("grid step must be > 0");
  if (stop < start) throw invalid_input_error("grid stop must be >= start");
  std::vector<double> g;
  const double span = stop - start;
  const long long count = static_cast<long long>(std::floor(span / step + 1e-12));
  for (long long k = 0; k <= count; ++k) g.push_back(start + double(k) * step);
  // Inclusive endpoints: clamp a final point onto stop when step does not
  // divide the range.
  if (std::abs(g.back() - stop) > 1e-12 * std::max(1.0, std::abs(stop))) g.push_back(stop);
  return g;
}

cdouble parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw invalid_input_error("empty complex literal");
  // Split at the last +/- that is not an exponent sign and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_part = [](std::string part, bool* is_imag) -> double {
    *is_imag = false;
    if (!part.empty() && (part.back() == 'i' || part.back() == 'I')) {
      *is_imag = true;
      part.pop_back();
      if (part.empty() || part == "+") part = "1";
      else if (part == "-") part = "-1";
    }
    try {
      return std::stod(part);
    } catch (const std::exception&) {
      throw invalid_input_error("bad complex literal");
    }
  };
  bool imag1 = false, imag2 = false;
  if (split == std::string::npos) {
    const double v = parse_part(s, &imag1);
    return imag1 ? cdouble(0.0, v) : cdouble(v, 0.0);
  }
  const double v1 = parse_part(s.substr(0, split), &imag1);
  const double v2 = parse_part(s.substr(split), &imag2);
  if (imag1 == imag2) throw invalid_input_error("complex literal needs one real and one imaginary part");
  return imag1 ? cdouble(v2, v1) : cdouble(v1, v2);
}

void write_coeff_csv_header(std::ostream& os, int n, double tol) {
  os << "# n=" << n << " quadrature_tol=" << format_number(tol) << "\n";
  os << "x,re_A_n,im_A_n,re_B_n,im_B_n\n";
}

void write_coeff_csv_row(std::ostream& os, double x, cdouble an, cdouble bn) {
  os << format_number(x) << "," << format_complex_csv(an) << "," << format_complex_csv(bn)
     << "\n";
}

void write_grid_csv_header(std::ostream& os) { os << "x,y,re_u,im_u\n"; }

void write_grid_csv_row(std::ostream& os, double x, double y, cdouble u) {
  os << format_number(x) << "," << format_number(y) << "," << format_complex_csv(u) << "\n";
}

}  // namespace hyperfour
