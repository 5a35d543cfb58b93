#include "sbs/payoff.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sbs/error.hpp"

namespace sbs {
namespace {

void require_smooth(const Cdf& dist, const char* role) {
  if (!dist.is_smooth()) {
    throw Error(ErrorCode::NonSmoothFamily,
                std::string(role) + " uses " + std::string(dist.family_name()) +
                    ", whose kink violates the smoothness assumption; use counterexample mode");
  }
}

void require_log_concave(const Cdf& dist, double v, const char* role) {
  const auto report = verify_log_concavity(dist, v * 1e-3, v, 256);
  if (!report.pass) {
    throw Error(ErrorCode::NotLogConcave,
                std::string(role) + " failed the log-concavity check (max second difference " +
                    std::to_string(report.max_second_difference) + ")");
  }
}

void require_bid(const MarketConfig& cfg, double b, double b_opp) {
  if (!std::isfinite(b) || b < 0.0 || b > cfg.value()) {
    throw Error(ErrorCode::OutOfRangeBid,
                "bid " + std::to_string(b) + " outside [0, " + std::to_string(cfg.value()) + "]");
  }
  if (!std::isfinite(b_opp) || b_opp < 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "opponent bid level must be finite and >= 0, got " + std::to_string(b_opp));
  }
}

void require_interior(const MarketConfig& cfg, double b) {
  if (!(b > 0.0 && b < cfg.value())) {
    throw Error(ErrorCode::OutOfRangeBid,
                "first-order quantities need 0 < b < v, got b = " + std::to_string(b));
  }
}

}  // namespace

MarketConfig::MarketConfig(double value, Cdf competition, Cdf noise1, Cdf noise2, Mode mode)
    : value_(value),
      competition_(std::move(competition)),
      noise1_(std::move(noise1)),
      noise2_(std::move(noise2)),
      mode_(mode) {
  if (!std::isfinite(value_) || value_ <= 0.0) {
    throw Error(ErrorCode::InvalidParameter, "value v must be finite and positive");
  }
  if (mode_ == Mode::Counterexample) return;

  require_smooth(competition_, "Q");
  require_smooth(noise1_, "N1");
  require_smooth(noise2_, "N2");

  for (int j = 1; j <= kQDerivativeGrid; ++j) {
    const double t = value_ * j / kQDerivativeGrid;
    if (!(competition_.pdf(t) > 0.0)) {
      throw Error(ErrorCode::QDerivativeNotPositive,
                  "Q' vanishes at t = " + std::to_string(t) + " inside (0, v]");
    }
  }

  require_log_concave(competition_, value_, "Q");
  require_log_concave(noise1_, value_, "N1");
  require_log_concave(noise2_, value_, "N2");
}

double payoff(const MarketConfig& cfg, Bidder bidder, double b, double b_opp) {
  require_bid(cfg, b, b_opp);
  if (b == cfg.value()) return 0.0;
  return (cfg.value() - b) * cfg.competition().cdf(b) * cfg.opponent_bid(bidder, b_opp).cdf(b);
}

double log_payoff(const MarketConfig& cfg, Bidder bidder, double b, double b_opp) {
  require_bid(cfg, b, b_opp);
  if (b == cfg.value() || b == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(cfg.value() - b) + cfg.competition().log_cdf(b) +
         cfg.opponent_bid(bidder, b_opp).log_cdf(b);
}

double foc_residual(const MarketConfig& cfg, Bidder bidder, double b, double b_opp) {
  require_bid(cfg, b, b_opp);
  require_interior(cfg, b);
  return 1.0 / (cfg.value() - b) - cfg.competition().score(b) -
         cfg.opponent_bid(bidder, b_opp).score(b);
}

double phi_map(const MarketConfig& cfg, Bidder bidder, double b, double b_opp) {
  require_bid(cfg, b, b_opp);
  require_interior(cfg, b);
  // gamma'/gamma = Q'/Q + F'/F, so gamma/gamma' is the reciprocal of the
  // summed scores; this stays finite where Q F underflows.
  const double log_slope = cfg.competition().score(b) + cfg.opponent_bid(bidder, b_opp).score(b);
  if (!(log_slope > 0.0)) {
    throw Error(ErrorCode::NonpositiveGammaPrime,
                "gamma'(b) <= 0 at b = " + std::to_string(b));
  }
  return cfg.value() - 1.0 / log_slope;
}

}  // namespace sbs
