#pragma once

#include <string>
#include <vector>

#include "sbs/error.hpp"
#include "sbs/payoff.hpp"

namespace sbs::fixtures {

struct NamedConfig {
  std::string name;
  MarketConfig cfg;
};

/// Standard-mode markets: power and exponential competition crossed with
/// lognormal noise, plus an asymmetric pair.
inline std::vector<NamedConfig> standard_configs() {
  std::vector<NamedConfig> out;
  for (const double sigma : {0.1, 0.3, 0.5}) {
    out.push_back({"exp2/ln" + std::to_string(sigma),
                   MarketConfig(1.0, Cdf::exponential(2.0), Cdf::lognormal(sigma), Cdf::lognormal(sigma))});
    out.push_back({"pow2/ln" + std::to_string(sigma),
                   MarketConfig(1.0, Cdf::power(2.0, 1.0), Cdf::lognormal(sigma), Cdf::lognormal(sigma))});
  }
  out.push_back({"pow1/ln0.1-ln0.5",
                 MarketConfig(1.0, Cdf::power(1.0, 1.5), Cdf::lognormal(0.1), Cdf::lognormal(0.5))});
  out.push_back({"exp1/ln0.3-ln0.2 v=3",
                 MarketConfig(3.0, Cdf::exponential(1.0), Cdf::lognormal(0.3), Cdf::lognormal(0.2))});
  return out;
}

inline MarketConfig counterexample_config(double v = 1.0) {
  return MarketConfig(v, Cdf::capped_linear(), Cdf::capped_linear(), Cdf::capped_linear(),
                      Mode::Counterexample);
}

/// Opponent-absent markets use any noise; b_opp = 0 removes the opponent.
inline MarketConfig power_market(double k, double v = 1.0) {
  return MarketConfig(v, Cdf::power(k, v), Cdf::lognormal(0.3), Cdf::lognormal(0.3));
}

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(-1);
}

}  // namespace sbs::fixtures
