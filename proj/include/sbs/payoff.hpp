#pragma once

#include "sbs/distributions.hpp"

namespace sbs {

/// Standard mode enforces the smoothness and log-concavity assumptions on
/// every distribution. Counterexample mode admits the kinked min(x, 1)
/// family and skips those checks.
enum class Mode { Standard, Counterexample };

enum class Bidder { First = 1, Second = 2 };

inline Bidder other(Bidder b) { return b == Bidder::First ? Bidder::Second : Bidder::First; }
inline int index(Bidder b) { return b == Bidder::First ? 0 : 1; }

/// Grid used to check Q' > 0 on (0, v] at construction.
inline constexpr int kQDerivativeGrid = 256;

/// One side-by-side market: common value v, exogenous competition Q and the
/// multiplicative noise distributions of the two agents.
class MarketConfig {
public:
  /// Validates v > 0 and, in standard mode, that every family is smooth,
  /// Q' > 0 on (0, v] and Q, N1, N2 are log-concave on [v/1000, v].
  MarketConfig(double value, Cdf competition, Cdf noise1, Cdf noise2,
               Mode mode = Mode::Standard);

  double value() const noexcept { return value_; }
  const Cdf& competition() const noexcept { return competition_; }
  const Cdf& noise(Bidder b) const noexcept { return b == Bidder::First ? noise1_ : noise2_; }
  Mode mode() const noexcept { return mode_; }

  /// Distribution of the opponent's submitted bid when it targets b_opp.
  OpponentBidCdf opponent_bid(Bidder bidder, double b_opp) const {
    return OpponentBidCdf(noise(other(bidder)), b_opp);
  }

  bool operator==(const MarketConfig&) const = default;

private:
  double value_;
  Cdf competition_;
  Cdf noise1_;
  Cdf noise2_;
  Mode mode_;
};

// In all payoff functions b_opp >= 0 is the opponent's intended bid; zero
// means the opponent is absent (F == 1 on (0, v]). Bids outside [0, v] throw
// OutOfRangeBid.

/// (v - b) Q(b) F(b).
double payoff(const MarketConfig& cfg, Bidder bidder, double b, double b_opp);

/// log of payoff; -inf where the payoff is zero.
double log_payoff(const MarketConfig& cfg, Bidder bidder, double b, double b_opp);

/// 1/(v - b) - Q'(b)/Q(b) - F'(b)/F(b), the negated derivative of
/// log_payoff. Increasing in b in standard mode; zero at an interior optimum.
/// Requires 0 < b < v.
double foc_residual(const MarketConfig& cfg, Bidder bidder, double b, double b_opp);

/// v - gamma(b)/gamma'(b) with gamma = Q F. Best responses are its fixed
/// points. Throws NonpositiveGammaPrime when gamma'(b) <= 0.
double phi_map(const MarketConfig& cfg, Bidder bidder, double b, double b_opp);

}  // namespace sbs
