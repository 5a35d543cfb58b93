#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sbs/dynamics.hpp"
#include "sbs/montecarlo.hpp"
#include "sbs/payoff.hpp"

namespace sbs {

struct BrCurveOptions {
  Bidder bidder = Bidder::First;
  std::size_t points = 50;
};

struct ValidateOptions {
  SimOptions sim;
  // Bids to simulate; when unset the equilibrium from `start` is used.
  std::optional<double> b1;
  std::optional<double> b2;
};

/// Everything a CLI run needs: the market plus per-command parameters.
struct RunConfig {
  MarketConfig market;
  IterationOptions solver{};
  double start = 0.0;          // b2(0) for solve / iterate
  std::vector<double> starts{};  // probe
  BrCurveOptions br_curve{};
  ValidateOptions validate{};
  double counterexample_resolution = 1e-4;
};

/// Parses and validates a JSON run configuration. Schema problems throw
/// SchemaError naming the offending key; assumption failures throw the
/// error of the failed check (QDerivativeNotPositive, NonSmoothFamily, ...).
RunConfig parse_config(std::string_view text);

RunConfig config_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const Cdf& dist);
nlohmann::json to_json(const RunConfig& cfg);

/// Default probe starts {0, v/4, v/2, 3v/4, v}.
std::vector<double> default_starts(double v);

}  // namespace sbs
