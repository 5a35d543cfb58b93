#include "sbs/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "sbs/error.hpp"

namespace sbs {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_samples(const SimOptions& opts) {
  if (opts.n < kMinSamples) {
    throw Error(ErrorCode::InvalidArgument,
                "Monte Carlo needs n >= " + std::to_string(kMinSamples) + ", got " +
                    std::to_string(opts.n));
  }
  if (opts.shards < 1) throw Error(ErrorCode::InvalidArgument, "shard count must be >= 1");
}

Estimate to_estimate(const Accumulator& acc) { return {acc.mean(), acc.stderr_of_mean()}; }

// Evaluates `block(index, count)` for every block, distributing contiguous
// block ranges over shards, then folds the per-block results in block order.
template <class Result, class BlockFn, class MergeFn>
Result run_blocks(std::uint64_t n, unsigned shards, BlockFn block, MergeFn merge) {
  const std::uint64_t n_blocks = (n + kSimBlock - 1) / kSimBlock;
  std::vector<Result> results(n_blocks);
  auto work = [&](std::uint64_t first, std::uint64_t last) {
    for (std::uint64_t j = first; j < last; ++j) {
      const std::uint64_t count = std::min(kSimBlock, n - j * kSimBlock);
      results[j] = block(j, count);
    }
  };

  const std::uint64_t workers = std::min<std::uint64_t>(shards, n_blocks);
  if (workers <= 1) {
    work(0, n_blocks);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t per = (n_blocks + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t first = w * per;
      const std::uint64_t last = std::min(n_blocks, first + per);
      if (first < last) pool.emplace_back(work, first, last);
    }
    for (auto& t : pool) t.join();
  }

  Result total{};
  for (const auto& r : results) merge(total, r);
  return total;
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

void Accumulator::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void Accumulator::merge(const Accumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double total = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  n_ += other.n_;
}

double Accumulator::stderr_of_mean() const {
  if (n_ < 2) return 0.0;
  const double n = static_cast<double>(n_);
  return std::sqrt(m2_ / (n - 1.0) / n);
}

Estimate empirical_payoff(const MarketConfig& cfg, Bidder bidder, double b, double b_opp,
                          const SimOptions& opts) {
  require_samples(opts);
  const double v = cfg.value();
  if (!std::isfinite(b) || b < 0.0 || b > v) {
    throw Error(ErrorCode::OutOfRangeBid, "bid " + std::to_string(b) + " outside [0, v]");
  }
  if (!std::isfinite(b_opp) || b_opp < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "opponent bid level must be finite and >= 0");
  }
  const Cdf& q = cfg.competition();
  const Cdf& noise = cfg.noise(other(bidder));

  auto block = [&](std::uint64_t index, std::uint64_t count) {
    StreamRng rng(opts.seed, index);
    Accumulator acc;
    for (std::uint64_t s = 0; s < count; ++s) {
      const double opponent = b_opp * noise.quantile(rng.uniform());
      const double competition = q.quantile(rng.uniform());
      acc.add(b > competition && b > opponent ? v - b : 0.0);
    }
    return acc;
  };
  const Accumulator total = run_blocks<Accumulator>(
      opts.n, opts.shards, block, [](Accumulator& into, const Accumulator& r) { into.merge(r); });
  return to_estimate(total);
}

namespace {

struct AuctionAccumulators {
  Accumulator win[2];
  Accumulator payoff[2];
  Accumulator buyer_win;
  Accumulator cost;
  Accumulator overpayment;

  void merge(const AuctionAccumulators& o) {
    for (int i = 0; i < 2; ++i) {
      win[i].merge(o.win[i]);
      payoff[i].merge(o.payoff[i]);
    }
    buyer_win.merge(o.buyer_win);
    cost.merge(o.cost);
    overpayment.merge(o.overpayment);
  }
};

}  // namespace

SimStats simulate_auctions(const MarketConfig& cfg, double b1, double b2, const SimOptions& opts) {
  require_samples(opts);
  const double v = cfg.value();
  for (const double b : {b1, b2}) {
    if (!std::isfinite(b) || b <= 0.0 || b > v) {
      throw Error(ErrorCode::OutOfRangeBid,
                  "simulated bids must lie in (0, v], got " + std::to_string(b));
    }
  }
  const Cdf& q = cfg.competition();
  const Cdf& n1 = cfg.noise(Bidder::First);
  const Cdf& n2 = cfg.noise(Bidder::Second);

  auto block = [&](std::uint64_t index, std::uint64_t count) {
    StreamRng rng(opts.seed, index);
    AuctionAccumulators acc;
    for (std::uint64_t s = 0; s < count; ++s) {
      const double bid1 = b1 * n1.quantile(rng.uniform());
      const double bid2 = b2 * n2.quantile(rng.uniform());
      const double competition = q.quantile(rng.uniform());
      const double high = std::max(bid1, bid2);
      const double low = std::min(bid1, bid2);

      const bool first_wins = bid1 > bid2 && bid1 > competition;
      const bool second_wins = bid2 > bid1 && bid2 > competition;
      const bool buyer_wins = high > competition;
      acc.win[0].add(first_wins ? 1.0 : 0.0);
      acc.win[1].add(second_wins ? 1.0 : 0.0);
      acc.payoff[0].add(first_wins ? v - bid1 : 0.0);
      acc.payoff[1].add(second_wins ? v - bid2 : 0.0);
      acc.buyer_win.add(buyer_wins ? 1.0 : 0.0);
      acc.cost.add(buyer_wins ? high : 0.0);
      acc.overpayment.add(buyer_wins ? high - std::max(low, competition) : 0.0);
    }
    return acc;
  };
  const AuctionAccumulators total = run_blocks<AuctionAccumulators>(
      opts.n, opts.shards, block,
      [](AuctionAccumulators& into, const AuctionAccumulators& r) { into.merge(r); });

  SimStats stats;
  stats.n = opts.n;
  stats.seed = opts.seed;
  for (int i = 0; i < 2; ++i) {
    stats.win_rate[i] = to_estimate(total.win[i]);
    stats.mean_payoff[i] = to_estimate(total.payoff[i]);
  }
  stats.buyer_win_rate = to_estimate(total.buyer_win);
  stats.mean_buyer_cost = to_estimate(total.cost);
  stats.mean_overpayment = to_estimate(total.overpayment);
  return stats;
}

}  // namespace sbs
