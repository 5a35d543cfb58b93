#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sbs/payoff.hpp"

namespace sbs {

enum class SolveMethod { GoldenSection, FocBisection, GridOracle };

std::string_view method_name(SolveMethod method);

struct BestResponseResult {
  double bid = 0.0;
  /// NaN when the first-order residual is undefined at the bid (b = 0 or v).
  double foc_residual = 0.0;
  SolveMethod method = SolveMethod::GoldenSection;
  double payoff_at_bid = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Golden-section search for the maximum of a unimodal function on
/// [lo, hi]; stops once the bracket is narrower than width. A -inf plateau
/// is treated as lying left of the mode.
Interval golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                            double width);

/// Root of an increasing function on [lo, hi] with f(lo) <= 0 <= f(hi),
/// bisected until the bracket cannot shrink in double precision.
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi);

/// Exhaustive argmax of f on n uniform points over [lo, hi]. Ties resolve to
/// the smallest point.
double grid_argmax(const std::function<double(double)>& f, double lo, double hi, std::size_t n);

/// Unique maximizer of payoff over [b_lo, v]: golden section on log_payoff,
/// then bisection on foc_residual when the maximizer is interior.
/// `search` overrides the initial golden-section bracket (it is clipped to
/// the admissible range). b_opp = 0 means the opponent is absent.
BestResponseResult best_response(const MarketConfig& cfg, Bidder bidder, double b_opp,
                                 std::optional<Interval> search = std::nullopt);

/// Brute-force oracle: uniform grid over [0, v] of n_coarse points, then
/// n_refine passes on windows 100x narrower around the incumbent.
BestResponseResult grid_oracle(const MarketConfig& cfg, Bidder bidder, double b_opp,
                               std::size_t n_coarse = 1000, int n_refine = 2);

/// argmax_b (v - alpha b) Q(alpha b) N(b / b_opp): the best response after
/// rescaling both bids by alpha.
double scaled_argmax(const MarketConfig& cfg, Bidder bidder, double b_opp, double alpha);

inline constexpr double kMonotoneSlack = 1e-7;

struct MonotoneViolation {
  std::size_t index = 0;  // pair (index, index + 1) of the opponent grid
  double drop = 0.0;
};

struct MonotoneReport {
  std::vector<double> responses;
  std::vector<MonotoneViolation> violations;
};

/// Best responses along an increasing grid of opponent bids; flags adjacent
/// pairs where the response drops by more than kMonotoneSlack.
MonotoneReport check_monotone_br(const MarketConfig& cfg, Bidder bidder,
                                 std::span<const double> b_opp_grid);

}  // namespace sbs
