#pragma once

#include <cstddef>

namespace sbs::counterexample {

// Closed forms for the market v, Q = N1 = N2 = min(x, 1), where every bid
// between v/2 and 2v/3 is an equilibrium.

/// (v - b) min(b, 1) min(b / b_opp, 1).
double piecewise_payoff(double v, double b, double b_opp);

/// Best response from the branch derivatives (b/b_opp)(2v - 3b) below the
/// opponent and v - 2b above it: v/2 for b_opp <= v/2, b_opp itself on
/// (v/2, 2v/3), and 2v/3 beyond.
double piecewise_br(double v, double b_opp);

struct EquilibriumInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t fixed_points = 0;
  std::size_t grid_points = 0;
  bool low_resolution = false;  // fewer than two fixed points detected
};

/// Scans b = v j / n, j = 1..n with n = ceil(v / resolution), for fixed
/// points of piecewise_br and returns the extreme ones.
EquilibriumInterval equilibrium_interval(double v, double resolution = 1e-4);

}  // namespace sbs::counterexample
