// Command-line front end: biorthogonal coefficient tables, boundary
// expansions, series evaluation, Klein-Gordon grids, fly-catcher heights,
// and the verification suite.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hyperfour/biortho.hpp"
#include "hyperfour/errors.hpp"
#include "hyperfour/expand.hpp"
#include "hyperfour/halfplane.hpp"
#include "hyperfour/hfs.hpp"
#include "hyperfour/io.hpp"
#include "hyperfour/kleingordon.hpp"
#include "hyperfour/verify.hpp"

using namespace hyperfour;

namespace {

// Series truncation default, overridable through HYPERFOUR_TABLE_ORDER.
int table_order() {
  if (const char* env = std::getenv("HYPERFOUR_TABLE_ORDER")) {
    const int v = std::atoi(env);
    if (v < 8) throw invalid_input_error("HYPERFOUR_TABLE_ORDER must be >= 8");
    return v;
  }
  return 64;
}

// Output stream selection: --out path or stdout.
struct OutStream {
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw invalid_input_error("cannot open output file: " + path);
    }
  }
  std::ostream& get() { return file.is_open() ? file : std::cout; }
  std::ofstream file;
};

// "const:1", "const:0.5+0.5i", "cauchy:0.7", "exp:2".
BoundaryFunction parse_boundary(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw invalid_input_error("boundary spec must be kind:value, got " + spec);
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "const") return BoundaryFunction::constant(parse_complex(arg));
  if (kind == "cauchy") return BoundaryFunction::cauchy(std::stod(arg));
  if (kind == "exp") return BoundaryFunction::pure_exponential(std::stoi(arg));
  throw invalid_input_error("unknown boundary kind: " + kind);
}

// Simple parallel-for over grid indices; the library evaluators are const
// and thread-safe, so the only coordination is the pre-sized result vector.
template <class F>
void parallel_for(std::size_t count, int threads, const F& body) {
  threads = std::max(1, threads);
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = static_cast<std::size_t>(w); i < count;
           i += static_cast<std::size_t>(threads))
        body(i);
    });
  for (auto& th : pool) th.join();
}

cdouble json_complex(const nlohmann::json& v) {
  if (v.is_number()) return cdouble(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2)
    return cdouble(v[0].get<double>(), v[1].get<double>());
  throw invalid_input_error("complex JSON values must be numbers or [re, im]");
}

int cmd_coeffs(int n, const std::string& grid_spec, const std::string& out,
               double tol, int threads) {
  const auto xs = parse_grid(grid_spec);
  BiorthoTable bt(std::max(1, std::abs(n)), table_order());
  std::vector<cdouble> an(xs.size()), bn(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t i) {
    if (n == 0) {
      an[i] = bt.a0_eval(xs[i]);
      bn[i] = 0.0;
    } else {
      an[i] = bt.an_eval(n, xs[i]);
      bn[i] = bt.bn_eval(n, xs[i]);
    }
  });
  OutStream os(out);
  write_coeff_csv_header(os.get(), n, tol);
  for (std::size_t i = 0; i < xs.size(); ++i)
    write_coeff_csv_row(os.get(), xs[i], an[i], bn[i]);
  return 0;
}

int cmd_expand(const std::string& boundary, int n_max, const std::string& out) {
  const auto f = parse_boundary(boundary);
  const auto tb = build_tables<double>(table_order());
  double residual = 0.0;
  const auto c = expand_boundary(f, n_max, tb, &residual);
  OutStream os(out);
  os.get() << hfs_to_json(c) << "\n";
  std::cerr << "boundary residual: " << format_number(residual) << "\n";
  return 0;
}

int cmd_eval(const std::string& coeffs_path, const std::string& tau_str) {
  std::ifstream in(coeffs_path);
  if (!in) throw invalid_input_error("cannot open coefficients file: " + coeffs_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto c = hfs_from_json(buf.str());
  const cdouble v = hfs_eval(c, parse_complex(tau_str));
  std::cout << format_complex_csv(v) << "\n";
  return 0;
}

int cmd_kg(int n, const std::string& axis, const std::string& data_path,
           const std::string& grid_spec, const std::string& ygrid_spec,
           double cutoff, const std::string& out, int threads) {
  BiorthoTable bt(8, table_order());
  WaveFunction w = [&] {
    if (!data_path.empty()) {
      std::ifstream in(data_path);
      if (!in) throw invalid_input_error("cannot open lattice data: " + data_path);
      const auto j = nlohmann::json::parse(in);
      std::map<int, cdouble> alpha, beta;
      if (j.contains("alpha"))
        for (const auto& [k, v] : j["alpha"].items())
          alpha[std::stoi(k)] = json_complex(v);
      if (j.contains("beta"))
        for (const auto& [k, v] : j["beta"].items())
          beta[std::stoi(k)] = json_complex(v);
      return kg_interpolate(bt, alpha, beta);
    }
    return kg_interp_solution(bt, n,
                              axis == "y" ? Axis::y_axis : Axis::x_axis);
  }();
  const auto xs = parse_grid(grid_spec);
  const auto ys = ygrid_spec.empty() ? xs : parse_grid(ygrid_spec);
  std::vector<cdouble> vals(xs.size() * ys.size());
  parallel_for(vals.size(), threads, [&](std::size_t i) {
    const double x = xs[i % xs.size()];
    const double y = ys[i / xs.size()];
    vals[i] = kg_eval(w, x, y, cutoff).value;
  });
  OutStream os(out);
  write_grid_csv_header(os.get());
  for (std::size_t j = 0; j < ys.size(); ++j)
    for (std::size_t i = 0; i < xs.size(); ++i)
      write_grid_csv_row(os.get(), xs[i], ys[j], vals[j * xs.size() + i]);
  return 0;
}

int cmd_height(const std::string& tau_str, bool holomorphic) {
  const cdouble tau = parse_complex(tau_str);
  const auto r = flycatcher_height(tau, !holomorphic);
  std::cout << "height: " << r.height << "\n"
            << "orbit length: " << r.orbit.size() << "\n"
            << "mesh point: " << (r.is_mesh ? "yes" : "no") << "\n"
            << "terminal: "
            << format_number(r.orbit.back().real()) << "+"
            << format_number(r.orbit.back().imag()) << "i\n";
  return 0;
}

int cmd_verify() {
  const auto results = run_verification(&std::cout);
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic Fourier series toolkit"};
  app.require_subcommand(1);

  int n = 1, n_max = 10, threads = 1;
  double tol = 1e-8, cutoff = 1000.0;
  std::string grid, ygrid, out, boundary, coeffs_path, tau_str, axis = "x",
              data_path;

  auto* coeffs = app.add_subcommand("coeffs", "tabulate A_n / B_n on a grid");
  coeffs->add_option("--n", n, "coefficient index (0 gives A_0)");
  coeffs->add_option("--grid", grid, "x grid, inclusive start:stop:step")->required();
  coeffs->add_option("--out", out, "output CSV path (default stdout)");
  coeffs->add_option("--tol", tol, "tolerance recorded in the CSV header");
  coeffs->add_option("--threads", threads, "worker threads for grid evaluation");

  auto* expand = app.add_subcommand("expand", "expand boundary data on T_+");
  expand->add_option("--boundary", boundary,
                     "boundary data: const:V, cauchy:X, or exp:N")->required();
  expand->add_option("--n-max", n_max, "truncation order of the expansion");
  expand->add_option("--out", out, "output JSON path (default stdout)");

  auto* eval = app.add_subcommand("eval", "evaluate a coefficient file at tau");
  eval->add_option("--coeffs", coeffs_path, "JSON coefficient file")->required();
  eval->add_option("--tau", tau_str, "evaluation point, e.g. 0.3+0.8i")->required();

  auto* kg = app.add_subcommand("kg", "Klein-Gordon solution on a grid");
  kg->add_option("--n", n, "lattice basis index for u_{(n,0)} / u_{(0,n)}");
  kg->add_option("--axis", axis, "x or y (which axis carries the data)");
  kg->add_option("--data", data_path,
                 "lattice data JSON {\"alpha\":{...},\"beta\":{...}} "
                 "(overrides --n/--axis)");
  kg->add_option("--grid", grid, "x grid, inclusive start:stop:step")->required();
  kg->add_option("--ygrid", ygrid, "y grid (defaults to the x grid)");
  kg->add_option("--cutoff", cutoff, "quadrature truncation X");
  kg->add_option("--out", out, "output CSV path (default stdout)");
  kg->add_option("--threads", threads, "worker threads for grid evaluation");

  auto* height = app.add_subcommand("height", "fly-catcher height of a point");
  height->add_option("--tau", tau_str, "point in the upper half-plane")->required();
  bool holomorphic = false;
  height->add_flag("--holomorphic", holomorphic,
                   "iterate the holomorphic lift g_2 instead of g*_2");

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  (void)verify;

  CLI11_PARSE(app, argc, argv);

  try {
    if (coeffs->parsed()) return cmd_coeffs(n, grid, out, tol, threads);
    if (expand->parsed()) return cmd_expand(boundary, n_max, out);
    if (eval->parsed()) return cmd_eval(coeffs_path, tau_str);
    if (kg->parsed())
      return cmd_kg(n, axis, data_path, grid, ygrid, cutoff, out, threads);
    if (height->parsed()) return cmd_height(tau_str, holomorphic);
    return cmd_verify();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
