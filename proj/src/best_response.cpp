#include "sbs/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sbs/error.hpp"

namespace sbs {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kBracketWidth = 1e-10;   // relative to v
constexpr double kLowerNudge = 1e-12;     // relative to v
constexpr int kDegeneracyProbes = 64;
constexpr double kWindowShrink = 100.0;

// Maximization of a log-concave objective on [lo, hi]. `residual` is the
// negated derivative of the objective (increasing, zero at an interior
// maximizer) and is only evaluated strictly inside (lo, hi).
struct LogConcaveProblem {
  std::function<double(double)> log_objective;
  std::function<double(double)> residual;
  double lo = 0.0;
  double hi = 0.0;
};

struct EngineResult {
  double x = 0.0;
  bool refined = false;
};

EngineResult maximize_log_concave(const LogConcaveProblem& problem, Interval search, double width) {
  bool any_finite = false;
  for (int j = 1; j <= kDegeneracyProbes && !any_finite; ++j) {
    const double x = problem.lo + (problem.hi - problem.lo) * j / (kDegeneracyProbes + 1);
    any_finite = std::isfinite(problem.log_objective(x));
  }
  if (!any_finite) {
    throw Error(ErrorCode::DegenerateSupport, "payoff is identically zero on the bid range");
  }

  const Interval bracket = golden_section_max(problem.log_objective, search.lo, search.hi, width);
  const double x = 0.5 * (bracket.lo + bracket.hi);

  // Golden section only resolves the mode to about sqrt(eps) relative,
  // since the objective is flat to second order there. Finish on the
  // first-order condition once a sign change is bracketed.
  const double inner_hi = std::nextafter(problem.hi, problem.lo);
  const double span = problem.hi - problem.lo;
  for (double h = 1e-9 * span; h < 10.0 * span; h *= 10.0) {
    const double a = std::max(problem.lo, x - h);
    const double b = std::min(inner_hi, x + h);
    try {
      if (problem.residual(a) <= 0.0 && problem.residual(b) >= 0.0) {
        return {bisect_increasing(problem.residual, a, b), true};
      }
    } catch (const Error&) {
      break;
    }
    if (a == problem.lo && b == inner_hi) break;
  }
  return {x, false};
}

double residual_or_nan(const MarketConfig& cfg, Bidder bidder, double b, double b_opp) {
  if (!(b > 0.0 && b < cfg.value())) return kNaN;
  try {
    return foc_residual(cfg, bidder, b, b_opp);
  } catch (const Error&) {
    return kNaN;
  }
}

void require_opponent(double b_opp) {
  if (!std::isfinite(b_opp) || b_opp < 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "opponent bid level must be finite and >= 0, got " + std::to_string(b_opp));
  }
}

}  // namespace

std::string_view method_name(SolveMethod method) {
  switch (method) {
    case SolveMethod::GoldenSection: return "golden_section";
    case SolveMethod::FocBisection: return "foc_bisection";
    case SolveMethod::GridOracle: return "grid_oracle";
  }
  return "unknown";
}

Interval golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                            double width) {
  constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width) {
    const bool both_dead = std::isinf(fc) && fc < 0 && std::isinf(fd) && fd < 0;
    if (fc < fd || both_dead) {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    }
  }
  return {a, b};
}

double bisect_increasing(const std::function<double(double)>& f, double lo, double hi) {
  double a = lo;
  double b = hi;
  for (int it = 0; it < 2000; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if (fm < 0.0) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double grid_argmax(const std::function<double(double)>& f, double lo, double hi, std::size_t n) {
  if (n < 2) return lo;
  double best_x = lo;
  double best = f(lo);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t j = 1; j < n; ++j) {
    const double x = j + 1 == n ? hi : lo + step * static_cast<double>(j);
    const double value = f(x);
    if (value > best) {
      best = value;
      best_x = x;
    }
  }
  return best_x;
}

BestResponseResult best_response(const MarketConfig& cfg, Bidder bidder, double b_opp,
                                 std::optional<Interval> search) {
  require_opponent(b_opp);
  const double v = cfg.value();

  // Every supported family has Q, F > 0 on (0, inf), so b_lo = 0.
  LogConcaveProblem problem;
  problem.lo = kLowerNudge * v;
  problem.hi = v;
  problem.log_objective = [&](double b) { return log_payoff(cfg, bidder, b, b_opp); };
  problem.residual = [&](double b) { return foc_residual(cfg, bidder, b, b_opp); };

  Interval bracket{problem.lo, problem.hi};
  if (search) {
    bracket.lo = std::clamp(search->lo, problem.lo, problem.hi);
    bracket.hi = std::clamp(search->hi, problem.lo, problem.hi);
    if (!(bracket.lo < bracket.hi)) {
      throw Error(ErrorCode::InvalidArgument, "search bracket is empty after clipping to [b_lo, v]");
    }
  }

  const EngineResult found = maximize_log_concave(problem, bracket, kBracketWidth * v);
  BestResponseResult result;
  result.bid = found.x;
  result.method = found.refined ? SolveMethod::FocBisection : SolveMethod::GoldenSection;
  result.foc_residual = residual_or_nan(cfg, bidder, found.x, b_opp);
  result.payoff_at_bid = payoff(cfg, bidder, found.x, b_opp);
  return result;
}

BestResponseResult grid_oracle(const MarketConfig& cfg, Bidder bidder, double b_opp,
                               std::size_t n_coarse, int n_refine) {
  require_opponent(b_opp);
  if (n_coarse < 1000 || n_refine < 0) {
    throw Error(ErrorCode::InvalidArgument, "grid oracle needs n_coarse >= 1000 and n_refine >= 0");
  }
  const double v = cfg.value();
  auto objective = [&](double b) { return payoff(cfg, bidder, b, b_opp); };

  double incumbent = grid_argmax(objective, 0.0, v, n_coarse);
  double best = objective(incumbent);
  double window = v;
  for (int pass = 0; pass < n_refine; ++pass) {
    window /= kWindowShrink;
    double lo = std::max(0.0, incumbent - 0.5 * window);
    double hi = std::min(v, lo + window);
    lo = std::max(0.0, hi - window);
    const double candidate = grid_argmax(objective, lo, hi, n_coarse);
    const double value = objective(candidate);
    if (value > best || (value == best && candidate < incumbent)) {
      best = value;
      incumbent = candidate;
    }
  }

  BestResponseResult result;
  result.bid = incumbent;
  result.method = SolveMethod::GridOracle;
  result.foc_residual = residual_or_nan(cfg, bidder, incumbent, b_opp);
  result.payoff_at_bid = best;
  return result;
}

double scaled_argmax(const MarketConfig& cfg, Bidder bidder, double b_opp, double alpha) {
  require_opponent(b_opp);
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "scale alpha must be finite and positive");
  }
  const double v = cfg.value();
  const Cdf& q = cfg.competition();
  const OpponentBidCdf f = cfg.opponent_bid(bidder, b_opp);

  // Substitute b = alpha b' into the payoff; the opponent level scales with
  // it, so F(alpha b' / (alpha b_opp)) = F(b').
  LogConcaveProblem problem;
  problem.lo = kLowerNudge * v / alpha;
  problem.hi = v / alpha;
  problem.log_objective = [&](double b) {
    const double margin = v - alpha * b;
    if (!(margin > 0.0)) return -std::numeric_limits<double>::infinity();
    return std::log(margin) + q.log_cdf(std::min(alpha * b, v)) + f.log_cdf(b);
  };
  problem.residual = [&](double b) {
    return alpha / (v - alpha * b) - alpha * q.score(alpha * b) - f.score(b);
  };
  return maximize_log_concave(problem, {problem.lo, problem.hi}, kBracketWidth * problem.hi).x;
}

MonotoneReport check_monotone_br(const MarketConfig& cfg, Bidder bidder,
                                 std::span<const double> b_opp_grid) {
  MonotoneReport report;
  report.responses.reserve(b_opp_grid.size());
  for (const double b_opp : b_opp_grid) {
    report.responses.push_back(best_response(cfg, bidder, b_opp).bid);
  }
  for (std::size_t j = 0; j + 1 < report.responses.size(); ++j) {
    const double drop = report.responses[j] - report.responses[j + 1];
    if (drop > kMonotoneSlack) report.violations.push_back({j, drop});
  }
  return report;
}

}  // namespace sbs
