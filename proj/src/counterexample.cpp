#include "sbs/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sbs/error.hpp"

namespace sbs::counterexample {
namespace {

void require_value(double v) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw Error(ErrorCode::InvalidParameter, "value v must be finite and positive");
  }
}

void require_opponent(double b_opp) {
  if (!std::isfinite(b_opp) || b_opp <= 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "opponent bid must be finite and positive, got " + std::to_string(b_opp));
  }
}

}  // namespace

double piecewise_payoff(double v, double b, double b_opp) {
  require_value(v);
  require_opponent(b_opp);
  if (!std::isfinite(b) || b < 0.0 || b > v) {
    throw Error(ErrorCode::OutOfRangeBid, "bid " + std::to_string(b) + " outside [0, v]");
  }
  return (v - b) * std::min(b, 1.0) * std::min(b / b_opp, 1.0);
}

double piecewise_br(double v, double b_opp) {
  require_value(v);
  require_opponent(b_opp);
  const double low = v / 2.0;
  const double high = 2.0 * v / 3.0;
  if (b_opp <= low) return low;
  if (b_opp >= high) return high;
  return b_opp;
}

EquilibriumInterval equilibrium_interval(double v, double resolution) {
  require_value(v);
  if (!std::isfinite(resolution) || resolution <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "scan resolution must be positive");
  }
  EquilibriumInterval out;
  out.grid_points = static_cast<std::size_t>(std::ceil(v / resolution - 1e-9));
  out.grid_points = std::max<std::size_t>(out.grid_points, 1);
  const double tie = 1e-12 * v;
  bool found = false;
  for (std::size_t j = 1; j <= out.grid_points; ++j) {
    const double b = v * static_cast<double>(j) / static_cast<double>(out.grid_points);
    if (std::abs(piecewise_br(v, b) - b) > tie) continue;
    if (!found) out.lo = b;
    out.hi = b;
    found = true;
    ++out.fixed_points;
  }
  out.low_resolution = out.fixed_points < 2;
  return out;
}

}  // namespace sbs::counterexample
