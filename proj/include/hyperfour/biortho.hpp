// The biorthogonal system A_0, A_n, B_n by semicircle contour quadrature:
//   A_n(x) = -1/(4 pi^2 n) int_{T+} S_n(1/lambda(eta)) (x - eta)^{-2} d eta
//   B_n(x) = -1/(4 pi^2 n) int_{T+} S_n(1/lambda(eta)) (1 + x eta)^{-2} d eta
//   A_0(x) =  1/(2 pi^2)   int_{T+} |lambda'|/|lambda|^2 Im eta / |x-eta|^2 |d eta|
// with T+ the upper unit semicircle traversed counterclockwise
// (eta = e^{i theta}, d eta = i e^{i theta} d theta), plus the fast pairing
// integrals, periodization sums, and the four-squares counting oracles.
//
// Precision: |S_n(1/lambda(e^{i theta}))| ~ e^{pi n sin theta} while the
// results are O(1), so the contour integrals lose ~ pi n / ln 10 digits to
// cancellation.  n <= 3 runs in double; n >= 4 switches to the quad-precision
// node cache.
#ifndef HYPERFOUR_BIORTHO_HPP
#define HYPERFOUR_BIORTHO_HPP

#include <memory>
#include <utility>
#include <vector>

#include "hyperfour/errors.hpp"
#include "hyperfour/fp.hpp"
#include "hyperfour/modular.hpp"
#include "hyperfour/snpoly.hpp"

namespace hyperfour {

// r_4(n, A) = #{(a1..a4) in A^4 : sum a_i^2 = n}, by enumeration.
enum class Lattice { integers, half_integers };
long r4_count(int n, Lattice lattice);

// Quadrature panels on the semicircle: theta in [delta, pi - delta], panels
// geometrically refined toward both endpoints, 64 Gauss-Legendre nodes per
// panel.  delta is chosen at construction so the excluded arcs contribute
// less than ~1e-19 to |S_{n_max}(1/lambda)|.
struct SemicirclePath {
  double delta = 0.0;
  int nodes_per_panel = 64;
  std::vector<std::pair<double, double>> panels;  // (theta_lo, theta_hi)
};

struct BiorthoPairing {
  cdouble value;                    // fast semicircle value
  double crosscheck_residual = 0.0; // |fast - direct|, 0 when skipped
  double crosscheck_tail = 0.0;     // tail bound of the direct integral
};

struct PeriodizationResult {
  cdouble value;
  double tail_bound = 0.0;
};

class BiorthoTable {
 public:
  // Immutable after construction; all evaluators are const and thread-safe.
  // table_order is the modular q-series truncation (must exceed n_max + 8).
  explicit BiorthoTable(int n_max, int table_order = 64);

  int n_max() const { return n_max_; }
  const SemicirclePath& path() const { return path_; }
  const ModularTablesD& modular_tables() const { return tbd_; }
  const ModularTables<f128>& modular_tables_q() const { return tbq_; }
  const SnTable<double>& sn_table() const { return snd_; }
  const SnTable<f128>& sn_table_q() const { return snq_; }

  double a0_eval(double x) const;
  cdouble an_eval(int n, double x) const;  // n != 0; A_{-n} = conj(A_n)
  cdouble bn_eval(int n, double x) const;  // n != 0; B_{-n} = conj(B_n)

  // (A_n^+, A_n^-) = (A_n + B_n, A_n - B_n), n >= 1.
  std::pair<cdouble, cdouble> aplus_aminus(int n, double x) const;

  // <A_n, e_m> = int_R A_n(x) e^{i pi m x} dx = delta_{mn}.  The fast path
  // uses the residue identity int_R e^{i pi m x}(x-eta)^{-2} dx =
  // -2 pi^2 m e^{i pi m eta} (m > 0, Im eta > 0; vanishes for m <= 0) to
  // collapse the double integral to (m/2n) int_{T+} S_n(1/lambda) e^{i pi m
  // eta} d eta.  With crosscheck, the real-line integral is also computed
  // over |x| <= X (tail bound 2 sup|B_n| / X) and a disagreement beyond the
  // combined tolerance raises consistency_error.
  BiorthoPairing pairing_a(int n, int m, bool crosscheck = false,
                           double X = 1e5) const;

  // int_R B_n(t) e^{i pi m t} dt, which vanishes for every m (the lattice
  // zeros of the Klein-Gordon basis on the opposite axis).  For m <= 0 the
  // residue computation gives exactly 0 (the pole -1/eta of (1 + t eta)^{-2}
  // is in the upper half-plane, and the contour closes below); for m > 0 the
  // fast path evaluates (m/2n) int_{T+} S_n(1/lambda) e^{-i pi m / eta}
  // eta^{-2} d eta, which is zero only up to quadrature.
  cdouble pairing_b(int n, int m) const;

  // Partial periodization sums over |j| <= J of A_0(x+2j) (-> 1/2),
  // A_n(x+2j) (-> e^{-i pi n x}/2) or B_n(x+2j) (-> 0).  The whole partial
  // sum is one contour integral: the kernel sum_j (x+2j-eta)^{-2} is formed
  // inside the integrand, which is exactly equal to the sum of the J
  // individual quadratures.  Tail bound C_n/(2J - |x|) from the (1+x^2)^{-1}
  // envelope, with C_n measured by sampling.
  enum class Which { A0, A, B };
  PeriodizationResult periodization_sum(Which which, int n, double x, long J) const;

  // Node caches for the other modules (expand, kleingordon): everything is
  // pretabulated per contour node.
  struct NodeD {
    double theta, weight;  // d theta weight
    cdouble eta, deta;     // deta = i e^{i theta} (d eta / d theta)
    cdouble lam, lam_prime;
  };
  struct NodeQ {
    f128 theta, weight;
    cquad eta, deta;
    cquad lam, lam_prime;
  };
  const std::vector<NodeD>& nodes() const { return nodes_d_; }
  const std::vector<NodeQ>& nodes_q() const { return nodes_q_; }
  // S_n(1/lambda(eta)) per node, n = 1..n_max.
  const std::vector<cdouble>& sn_at_nodes(int n) const;
  const std::vector<cquad>& sn_at_nodes_q(int n) const;

  static constexpr int kQuadThreshold = 4;  // n >= this runs in quad

 private:
  cdouble an_contour_d(int n, double x) const;
  cdouble bn_contour_d(int n, double x) const;
  cdouble an_contour_q(int n, double x) const;
  cdouble bn_contour_q(int n, double x) const;
  double envelope_constant(Which which, int n) const;

  int n_max_;
  SemicirclePath path_;
  ModularTablesD tbd_;
  ModularTables<f128> tbq_;
  SnTable<double> snd_;
  SnTable<f128> snq_;
  std::vector<NodeD> nodes_d_;
  std::vector<NodeQ> nodes_q_;
  std::vector<std::vector<cdouble>> sn_nodes_d_;  // [n-1][node]
  std::vector<std::vector<cquad>> sn_nodes_q_;
};

}  // namespace hyperfour

#endif  // HYPERFOUR_BIORTHO_HPP
