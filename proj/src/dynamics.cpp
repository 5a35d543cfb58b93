#include "sbs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "sbs/best_response.hpp"
#include "sbs/error.hpp"

namespace sbs {
namespace {

void require_options(const MarketConfig& cfg, double b2_start, const IterationOptions& opts) {
  if (!std::isfinite(b2_start) || b2_start < 0.0 || b2_start > cfg.value()) {
    throw Error(ErrorCode::InvalidArgument,
                "start b2 = " + std::to_string(b2_start) + " must lie in [0, v]");
  }
  if (!(opts.tol > 0.0) || opts.max_iter < 1) {
    throw Error(ErrorCode::InvalidArgument, "need tol > 0 and max_iter >= 1");
  }
}

double residual_or_nan(const MarketConfig& cfg, Bidder bidder, double b, double b_opp) {
  try {
    return foc_residual(cfg, bidder, b, b_opp);
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

bool moves_with(Direction d, double prev, double next, double slack) {
  switch (d) {
    case Direction::Nondecreasing: return next >= prev - slack;
    case Direction::Nonincreasing: return next <= prev + slack;
    case Direction::Constant: return std::abs(next - prev) <= slack;
  }
  return false;
}

}  // namespace

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::Nondecreasing: return "nondecreasing";
    case Direction::Nonincreasing: return "nonincreasing";
    case Direction::Constant: return "constant";
  }
  return "unknown";
}

std::string_view stop_reason_name(StopReason r) {
  return r == StopReason::Converged ? "converged" : "max_iter";
}

bool is_monotone(const IterationTrace& trace, double slack) {
  double prev_b2 = trace.start;
  for (std::size_t j = 0; j < trace.steps.size(); ++j) {
    const auto& step = trace.steps[j];
    if (!moves_with(trace.direction, prev_b2, step.b2, slack)) return false;
    if (j > 0 && !moves_with(trace.direction, trace.steps[j - 1].b1, step.b1, slack)) return false;
    prev_b2 = step.b2;
  }
  return true;
}

IterationTrace iterate(const MarketConfig& cfg, double b2_start, const IterationOptions& opts) {
  require_options(cfg, b2_start, opts);

  IterationTrace trace;
  trace.start = b2_start;
  double b2_prev = b2_start;
  double b1_prev = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 1; k <= opts.max_iter; ++k) {
    const double b1 = best_response(cfg, Bidder::First, b2_prev).bid;
    const double b2 = best_response(cfg, Bidder::Second, b1).bid;
    trace.steps.push_back({k, b1, b2});
    if (k == 1) {
      trace.direction = b2 > b2_start   ? Direction::Nondecreasing
                        : b2 < b2_start ? Direction::Nonincreasing
                                        : Direction::Constant;
    }
    const bool settled = k >= 2 && std::abs(b1 - b1_prev) < opts.tol &&
                         std::abs(b2 - b2_prev) < opts.tol;
    b1_prev = b1;
    b2_prev = b2;
    if (settled) {
      trace.stop_reason = StopReason::Converged;
      return trace;
    }
  }
  trace.stop_reason = StopReason::MaxIter;
  return trace;
}

EquilibriumReport equilibrium(const MarketConfig& cfg, double b2_start,
                              const IterationOptions& opts) {
  EquilibriumReport report;
  report.trace = iterate(cfg, b2_start, opts);
  report.iterations = report.trace.steps.size();
  report.b1_star = report.trace.steps.back().b1;
  report.b2_star = report.trace.steps.back().b2;
  report.converged = report.trace.stop_reason == StopReason::Converged;
  report.foc_residuals = {residual_or_nan(cfg, Bidder::First, report.b1_star, report.b2_star),
                          residual_or_nan(cfg, Bidder::Second, report.b2_star, report.b1_star)};
  if (!report.converged) return report;

  const double gap1 = std::abs(best_response(cfg, Bidder::First, report.b2_star).bid - report.b1_star);
  const double gap2 = std::abs(best_response(cfg, Bidder::Second, report.b1_star).bid - report.b2_star);
  if (!(gap1 < 10.0 * opts.tol && gap2 < 10.0 * opts.tol)) {
    throw Error(ErrorCode::NotAnEquilibrium,
                "limit is not a mutual best response (gaps " + std::to_string(gap1) + ", " +
                    std::to_string(gap2) + ")");
  }
  return report;
}

UniquenessReport uniqueness_probe(const MarketConfig& cfg, std::span<const double> starts,
                                  const IterationOptions& opts) {
  if (starts.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "uniqueness probe needs at least two starts");
  }
  std::vector<double> ordered(starts.begin(), starts.end());
  std::sort(ordered.begin(), ordered.end());

  std::vector<std::future<EquilibriumReport>> runs;
  runs.reserve(ordered.size());
  for (const double start : ordered) {
    runs.push_back(std::async(std::launch::async, [&cfg, start, &opts] {
      return equilibrium(cfg, start, opts);
    }));
  }

  UniquenessReport report;
  for (std::size_t j = 0; j < runs.size(); ++j) {
    const EquilibriumReport eq = runs[j].get();
    report.limits.push_back({ordered[j], eq.b1_star, eq.b2_star, eq.converged});
  }
  for (std::size_t i = 0; i < report.limits.size(); ++i) {
    for (std::size_t j = i + 1; j < report.limits.size(); ++j) {
      const auto& a = report.limits[i];
      const auto& b = report.limits[j];
      report.max_spread = std::max({report.max_spread, std::abs(a.b1 - b.b1), std::abs(a.b2 - b.b2)});
    }
  }
  report.pass = report.max_spread < 100.0 * opts.tol;
  return report;
}

ExtremalReport extremal_equilibria(const MarketConfig& cfg, const IterationOptions& opts) {
  ExtremalReport report;
  report.lower = equilibrium(cfg, 0.0, opts);
  report.upper = equilibrium(cfg, cfg.value(), opts);
  report.lower_pair = {report.lower.b1_star, report.lower.b2_star};
  report.upper_pair = {report.upper.b1_star, report.upper.b2_star};
  report.spread = std::max(std::abs(report.upper_pair.first - report.lower_pair.first),
                           std::abs(report.upper_pair.second - report.lower_pair.second));
  report.coincide = report.spread < 100.0 * opts.tol;
  return report;
}

}  // namespace sbs
