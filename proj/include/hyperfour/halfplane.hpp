// Upper-half-plane geometry: generator maps, the fundamental domain
// D_Theta = {|Re tau| < 1, |tau| > 1}, the fly-catcher height algorithm for
// the lifted Gauss maps, Theta-group words, and the growth gauge M(tau).
#ifndef HYPERFOUR_HALFPLANE_HPP
#define HYPERFOUR_HALFPLANE_HPP

#include <array>
#include <string>
#include <vector>

#include "hyperfour/errors.hpp"
#include "hyperfour/fp.hpp"

namespace hyperfour {

// A point of the upper half-plane; functions taking an HPoint validate
// Im tau > 0.
using HPoint = cdouble;

enum class MapKind { S, T, T2, Sstar, Rstar, Mod2 };

enum class Region { interior, boundary, outside };

// Boundary tolerance for D_Theta membership: mesh points are measure zero
// but float rounding lands on them.
inline constexpr double kBoundaryTol = 1e-12;

HPoint apply_map(MapKind m, HPoint tau);

// mod2(tau) = tau - 2k with -1 <= Re < 1 (Re = -1 on the boundary tie).
HPoint mod2(HPoint tau);

Region in_DTheta(HPoint tau);

inline bool in_closed_DTheta(HPoint tau) {
  const Region r = in_DTheta(tau);
  return r == Region::interior || r == Region::boundary;
}

// A group element as an integer Moebius matrix plus the letter sequence that
// produced it.  For Theta-group words the matrix is congruent to the
// identity or the antidiagonal mod 2.
struct ThetaWord {
  std::array<long long, 4> m{1, 0, 0, 1};  // (a, b; c, d), det = 1
  struct Letter {
    char base;      // 'S' or 'T' ('T' letters carry even exponents here)
    long exponent;  // 1 for S; the (even) shift for T
  };
  std::vector<Letter> letters;

  HPoint apply(HPoint tau) const;
  ThetaWord inverse() const;
  int word_length() const { return static_cast<int>(letters.size()); }
  bool is_theta_group() const;
};

struct FlycatcherResult {
  int height = 0;              // N = n*_alg(tau)
  std::vector<HPoint> orbit;   // tau_0 = mod2(tau), ..., terminal point
  bool is_mesh = false;        // terminal point on the boundary of D_Theta
};

// Fly-catcher algorithm: tau_0 = mod2(tau), tau_{j+1} = mod2(S*(tau_j)),
// stop when tau_j is in the closure of D_Theta.  use_star = false runs the
// holomorphic variant g_2 = mod2 o S instead (same height off mesh points).
FlycatcherResult flycatcher_height(HPoint tau, bool use_star = true);

struct TileReduction {
  ThetaWord gamma;  // gamma(tau0) = tau
  HPoint tau0;      // representative in the closure of D_Theta
  bool is_mesh = false;
};

// Identify the Theta-group tile containing tau via the g_2 orbit.
TileReduction reduce_to_tile(HPoint tau);

// M(tau) = max{1, |tau|^2} / Im tau.
double big_M(HPoint tau);

// Mean fly-catcher height over t in [-1,1] at fixed Im = y, midpoint rule.
double average_height(double y, int nt = 4096);

}  // namespace hyperfour

#endif  // HYPERFOUR_HALFPLANE_HPP
