#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "sbs/payoff.hpp"

namespace sbs {

/// Seedable, splittable uniform source. Stream `s` of seed `x` is an
/// mt19937_64 keyed by a SplitMix64 mix of (x, s), so shards never share
/// state and any stream can be regenerated on its own.
class StreamRng {
public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform on the open interval (0, 1), 53 bits.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
  }

private:
  std::mt19937_64 engine_;
};

/// Mergeable mean/variance accumulator (Welford, Chan et al. merge).
class Accumulator {
public:
  void add(double x);
  void merge(const Accumulator& other);

  std::uint64_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  /// Standard error of the mean, sqrt(sample variance / n).
  double stderr_of_mean() const;

  bool operator==(const Accumulator&) const = default;

private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  bool operator==(const Estimate&) const = default;
};

struct SimOptions {
  std::uint64_t n = 1'000'000;
  std::uint64_t seed = 1;
  unsigned shards = 1;
};

/// Samples are generated in fixed blocks of this size, one RNG stream per
/// block, and merged in block order; the result does not depend on shards.
inline constexpr std::uint64_t kSimBlock = 1u << 16;
inline constexpr std::uint64_t kMinSamples = 1000;

/// Mean of (v - b) 1{b > competition} 1{b > opponent bid}, with the
/// opponent bid b_opp * eps. Per sample the draws are: opponent noise,
/// then competition. Ties lose.
Estimate empirical_payoff(const MarketConfig& cfg, Bidder bidder, double b, double b_opp,
                          const SimOptions& opts);

struct SimStats {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  Estimate win_rate[2];
  Estimate mean_payoff[2];
  Estimate buyer_win_rate;
  Estimate mean_buyer_cost;
  Estimate mean_overpayment;
  bool operator==(const SimStats&) const = default;
};

/// Full auctions with both agents bidding b_i * eps_i. Per auction the draws
/// are eps1, eps2, then competition. The buyer wins when the higher noisy
/// bid beats competition and pays that bid; overpayment is that bid minus
/// max(lower noisy bid, competition). All means are per auction (zero when
/// the event does not occur).
SimStats simulate_auctions(const MarketConfig& cfg, double b1, double b2, const SimOptions& opts);

}  // namespace sbs
