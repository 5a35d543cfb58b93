#pragma once

// Independent reference computations used only by the tests. None of these
// call the library's solvers; they only evaluate the closed-form CDFs.

#include <cmath>
#include <functional>
#include <vector>

#include "sbs/distributions.hpp"
#include "sbs/payoff.hpp"

namespace sbs::oracle {

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int j = 1; j < n; ++j) sum += f(a + j * h) * (j % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

/// Plain (v - b) Q(b) F(b) from the CDFs, without the library's payoff code.
inline double direct_payoff(const MarketConfig& cfg, Bidder bidder, double b, double b_opp) {
  const double f = b_opp == 0.0 ? 1.0 : cfg.noise(other(bidder)).cdf(b / b_opp);
  return (cfg.value() - b) * cfg.competition().cdf(b) * f;
}

/// Repeated dense scans around the incumbent: 20001 points, then windows of
/// 4 steps, until the step is below `resolution`.
inline double brute_argmax(const std::function<double(double)>& f, double lo, double hi,
                           double resolution = 1e-9) {
  const int n = 20001;
  double best_x = lo;
  while (true) {
    const double step = (hi - lo) / (n - 1);
    double best = -INFINITY;
    for (int j = 0; j < n; ++j) {
      const double x = lo + j * step;
      const double y = f(x);
      if (y > best) {
        best = y;
        best_x = x;
      }
    }
    if (step < resolution) return best_x;
    const double new_lo = std::max(lo, best_x - 2 * step);
    hi = std::min(hi, best_x + 2 * step);
    lo = new_lo;
  }
}

/// Best response by brute force on direct_payoff.
inline double brute_best_response(const MarketConfig& cfg, Bidder bidder, double b_opp) {
  return brute_argmax([&](double b) { return direct_payoff(cfg, bidder, b, b_opp); }, 0.0,
                      cfg.value());
}

/// Expected realized payoff of a bidder whose submitted bid is b * eps,
/// eps ~ own noise, facing competition Q and an opponent at b_opp * eps'.
/// Integrated over eps's quantile levels with the midpoint rule.
inline double noise_averaged_payoff(const MarketConfig& cfg, Bidder bidder, double b, double b_opp,
                                    int n = 200000) {
  const Cdf& own = cfg.noise(bidder);
  const Cdf& opp = cfg.noise(other(bidder));
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double bid = b * own.quantile((j + 0.5) / n);
    const double win = cfg.competition().cdf(bid) * opp.cdf(bid / b_opp);
    sum += (cfg.value() - bid) * win;
  }
  return sum / n;
}

}  // namespace sbs::oracle
