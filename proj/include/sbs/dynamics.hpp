#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sbs/payoff.hpp"

namespace sbs {

struct IterationOptions {
  double tol = 1e-9;
  std::size_t max_iter = 10000;
};

enum class Direction { Nondecreasing, Nonincreasing, Constant };
enum class StopReason { Converged, MaxIter };

std::string_view direction_name(Direction d);
std::string_view stop_reason_name(StopReason r);

struct IterationStep {
  std::size_t k = 0;
  double b1 = 0.0;
  double b2 = 0.0;
};

struct IterationTrace {
  double start = 0.0;  // b2 at k = 0
  std::vector<IterationStep> steps;
  Direction direction = Direction::Constant;
  StopReason stop_reason = StopReason::MaxIter;
};

inline constexpr double kTraceMonotoneSlack = 1e-10;

/// True when both coordinate sequences (b2 including the start) move in the
/// recorded direction, up to `slack`.
bool is_monotone(const IterationTrace& trace, double slack = kTraceMonotoneSlack);

/// Sequential best responses: b1(k) = BR1(b2(k-1)), then b2(k) = BR2(b1(k)).
/// Stops once both coordinates move by less than tol (checked from k = 2),
/// or after max_iter rounds. A start of 0 means agent 2 is initially absent.
IterationTrace iterate(const MarketConfig& cfg, double b2_start, const IterationOptions& opts = {});

struct EquilibriumReport {
  double b1_star = 0.0;
  double b2_star = 0.0;
  std::pair<double, double> foc_residuals{0.0, 0.0};
  std::size_t iterations = 0;
  bool converged = false;
  IterationTrace trace;
};

/// Runs iterate and, on convergence, checks the limit is a mutual best
/// response within 10 tol (throws NotAnEquilibrium otherwise). A run that
/// hits max_iter is returned with converged = false.
EquilibriumReport equilibrium(const MarketConfig& cfg, double b2_start,
                              const IterationOptions& opts = {});

struct ProbeLimit {
  double start = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  bool converged = false;
};

struct UniquenessReport {
  std::vector<ProbeLimit> limits;  // sorted by start
  double max_spread = 0.0;         // max pairwise sup-norm distance
  bool pass = false;               // max_spread < 100 tol
};

/// Equilibria from several starts, run concurrently and merged in start order.
UniquenessReport uniqueness_probe(const MarketConfig& cfg, std::span<const double> starts,
                                  const IterationOptions& opts = {});

struct ExtremalReport {
  std::pair<double, double> lower_pair;
  std::pair<double, double> upper_pair;
  double spread = 0.0;
  bool coincide = false;  // spread < 100 tol
  EquilibriumReport lower;
  EquilibriumReport upper;
};

/// Least and greatest equilibria, reached by the monotone runs started at
/// b2 = 0 and b2 = v.
ExtremalReport extremal_equilibria(const MarketConfig& cfg, const IterationOptions& opts = {});

}  // namespace sbs
