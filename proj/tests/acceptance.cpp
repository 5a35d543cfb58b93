// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "sbs/best_response.hpp"
#include "sbs/counterexample.hpp"
#include "sbs/distributions.hpp"
#include "sbs/dynamics.hpp"
#include "sbs/montecarlo.hpp"

using namespace sbs;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Standard-mode suite: power and exponential competition with lognormal noise.
std::vector<fixtures::NamedConfig> suite() {
  std::vector<fixtures::NamedConfig> out;
  for (const auto& c : fixtures::standard_configs()) {
    if (c.name.rfind("exp2/", 0) == 0 || c.name.rfind("pow2/", 0) == 0) out.push_back(c);
  }
  return out;
}

void counterexample_reproduction(Outcome& o) {
  const auto t0 = Clock::now();
  for (const double b : {0.51, 0.55, 0.60, 0.65}) {
    o.require(counterexample::piecewise_br(1.0, b) == b, "br(" + std::to_string(b) + ") != b");
  }
  const auto interval = counterexample::equilibrium_interval(1.0);
  o.detail << " interval=(" << interval.lo << ", " << interval.hi << ")";
  o.require(std::abs(interval.lo - 0.5) <= 1e-3, "lower endpoint");
  o.require(std::abs(interval.hi - 2.0 / 3.0) <= 1e-3, "upper endpoint");
  const double t = seconds_since(t0);
  o.detail << " time=" << t << "s";
  o.require(t < 1.0, "runtime");
}

void convergence(Outcome& o) {
  const auto t0 = Clock::now();
  double worst_foc = 0.0;
  std::size_t max_rounds = 0;
  const auto configs = suite();
  o.require(configs.size() >= 5, "fewer than 5 configs");
  for (const auto& [name, cfg] : configs) {
    for (const double start : {0.0, cfg.value()}) {
      const EquilibriumReport eq = equilibrium(cfg, start, {1e-9, 10000});
      o.require(eq.converged, name + " did not converge");
      o.require(is_monotone(eq.trace), name + " trace not monotone");
      worst_foc = std::max({worst_foc, std::abs(eq.foc_residuals.first), std::abs(eq.foc_residuals.second)});
      max_rounds = std::max(max_rounds, eq.iterations);
    }
  }
  const double t = seconds_since(t0);
  o.detail << " configs=" << configs.size() << " max_rounds=" << max_rounds << " max_foc=" << worst_foc
           << " time=" << t << "s";
  o.require(worst_foc < 1e-6, "foc residual");
  o.require(t < 10.0, "runtime");
}

void uniqueness(Outcome& o) {
  double worst_probe = 0.0;
  double worst_extremal = 0.0;
  for (const auto& [name, cfg] : suite()) {
    const auto starts = std::vector<double>{0.0, cfg.value() / 4, cfg.value() / 2, 3 * cfg.value() / 4, cfg.value()};
    worst_probe = std::max(worst_probe, uniqueness_probe(cfg, starts).max_spread);
    worst_extremal = std::max(worst_extremal, extremal_equilibria(cfg).spread);
  }
  const std::vector<double> ce_starts{0.55, 0.65};
  const double ce_spread = uniqueness_probe(fixtures::counterexample_config(), ce_starts).max_spread;
  o.detail << " probe_spread=" << worst_probe << " extremal_spread=" << worst_extremal
           << " counterexample_spread=" << ce_spread;
  o.require(worst_probe < 1e-7, "probe spread");
  o.require(worst_extremal < 1e-7, "extremal spread");
  o.require(std::abs(ce_spread - 0.1) < 1e-6, "counterexample spread");
}

void analytic_best_response(Outcome& o) {
  double worst = 0.0;
  for (const double v : {1.0, 2.5}) {
    for (const double k : {1.0, 2.0, 3.0}) {
      const double br = best_response(fixtures::power_market(k, v), Bidder::First, 0.0).bid;
      worst = std::max(worst, std::abs(br - k * v / (k + 1)));
    }
  }
  const double kink = best_response(fixtures::counterexample_config(), Bidder::First, 1.0).bid;
  o.detail << " power_err=" << worst << " capped_br=" << kink;
  o.require(worst < 1e-8, "power-law BR");
  o.require(std::abs(kink - 2.0 / 3.0) < 1e-6, "capped BR");
}

void oracle_equivalence(Outcome& o) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto configs = fixtures::standard_configs();
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto& cfg = configs[rng() % configs.size()].cfg;
    const Bidder bidder = rng() % 2 ? Bidder::First : Bidder::Second;
    const double b_opp = cfg.value() * unit(rng);
    worst = std::max(worst, std::abs(best_response(cfg, bidder, b_opp).bid - grid_oracle(cfg, bidder, b_opp).bid));
  }
  o.detail << " instances=50 max_gap=" << worst;
  o.require(worst < 1e-5, "gap");
}

void monotone_and_homogeneity(Outcome& o) {
  std::size_t violations = 0;
  std::size_t non_decreasing = 0;
  const std::vector<double> alphas{0.8, 0.9, 1.0, 1.1, 1.25};
  for (const auto& [name, cfg] : fixtures::standard_configs()) {
    std::vector<double> grid;
    for (int j = 1; j <= 50; ++j) grid.push_back(cfg.value() * j / 50.0);
    for (const Bidder bidder : {Bidder::First, Bidder::Second}) {
      violations += check_monotone_br(cfg, bidder, grid).violations.size();
    }
    double prev = INFINITY;
    for (const double alpha : alphas) {
      const double x = scaled_argmax(cfg, Bidder::First, 0.6 * cfg.value(), alpha);
      if (!(x < prev)) ++non_decreasing;
      prev = x;
    }
  }
  o.detail << " br_violations=" << violations << " alpha_violations=" << non_decreasing;
  o.require(violations == 0, "monotone BR");
  o.require(non_decreasing == 0, "scaled argmax");
}

void monte_carlo(Outcome& o) {
  const auto t0 = Clock::now();
  const auto configs = suite();
  int agree = 0;
  int total = 0;
  for (std::size_t j = 0; j < configs.size() && total < 5; ++j, ++total) {
    const MarketConfig& cfg = configs[j].cfg;
    const EquilibriumReport eq = equilibrium(cfg, 0.0);
    const Estimate e = empirical_payoff(cfg, Bidder::First, eq.b1_star, eq.b2_star, {1'000'000, 2024 + j, 1});
    const double z = (e.mean - payoff(cfg, Bidder::First, eq.b1_star, eq.b2_star)) / e.std_error;
    o.detail << " z" << j << "=" << z;
    if (std::abs(z) < 3.0) ++agree;
  }
  const MarketConfig& cfg = configs[0].cfg;
  const SimStats a = simulate_auctions(cfg, 0.7, 0.72, {1'000'000, 5, 1});
  const SimStats b = simulate_auctions(cfg, 0.7, 0.72, {1'000'000, 5, 1});
  const SimStats c = simulate_auctions(cfg, 0.7, 0.72, {1'000'000, 5, 4});
  const Estimate p1 = empirical_payoff(cfg, Bidder::Second, 0.7, 0.72, {1'000'000, 6, 1});
  const Estimate p4 = empirical_payoff(cfg, Bidder::Second, 0.7, 0.72, {1'000'000, 6, 4});
  const double t = seconds_since(t0);
  o.detail << " agree=" << agree << "/" << total << " time=" << t << "s";
  o.require(total == 5 && agree >= 4, "agreement");
  o.require(a == b, "repeat run differs");
  o.require(a == c && p1 == p4, "shard count changes result");
  o.require(t < 30.0, "runtime");
}

void log_concavity(Outcome& o) {
  const std::vector<Cdf> smooth{Cdf::power(1.0, 2.0), Cdf::power(3.0, 2.0), Cdf::exponential(0.5),
                                Cdf::exponential(4.0), Cdf::lognormal(0.1), Cdf::lognormal(0.5),
                                Cdf::lognormal(1.5)};
  for (const Cdf& d : smooth) {
    const auto r = verify_log_concavity(d, 0.05, 2.0, 400);
    o.require(r.pass, std::string(d.family_name()) + " rejected");
  }
  const auto kink = verify_log_concavity(Cdf::capped_linear(), 0.5, 1.5, 401);
  o.detail << " capped_linear max_second_difference=" << kink.max_second_difference;
  // Expected to be flagged at the kink; log min(x, 1) is concave, so it is not.
  o.require(!kink.pass && kink.max_second_difference > 0.0, "capped_linear not flagged at the kink");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1 counterexample reproduction", counterexample_reproduction},
      {"2 convergence", convergence},
      {"3 uniqueness", uniqueness},
      {"4 analytic best response", analytic_best_response},
      {"5 oracle equivalence", oracle_equivalence},
      {"6 monotone BR and homogeneity", monotone_and_homogeneity},
      {"7 monte carlo agreement", monte_carlo},
      {"8 log-concavity validation", log_concavity},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %s:%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
