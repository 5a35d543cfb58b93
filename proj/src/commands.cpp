#include "sbs/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "sbs/best_response.hpp"
#include "sbs/error.hpp"

namespace sbs {
namespace {

using nlohmann::json;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json pair_json(std::pair<double, double> p) { return json::array({p.first, p.second}); }

json estimate_json(const Estimate& e) { return {{"mean", e.mean}, {"stderr", e.std_error}}; }

// NaN has no JSON representation.
json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return file;
}

void write_json(const json& doc, const std::filesystem::path& path, std::ostream& out) {
  auto file = open_output(path);
  file << doc.dump(2) << '\n';
  out << doc.dump(2) << '\n';
}

void write_br_curve(const std::vector<std::pair<double, double>>& rows,
                    const std::filesystem::path& path) {
  auto file = open_output(path);
  file << "b_opp,br\n";
  for (const auto& [b_opp, br] : rows) file << fmt(b_opp) << ',' << fmt(br) << '\n';
}

int run_validate(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& out) {
  double b1 = 0.0;
  double b2 = 0.0;
  if (cfg.validate.b1 && cfg.validate.b2) {
    b1 = *cfg.validate.b1;
    b2 = *cfg.validate.b2;
  } else {
    const EquilibriumReport eq = equilibrium(cfg.market, cfg.start, cfg.solver);
    b1 = cfg.validate.b1.value_or(eq.b1_star);
    b2 = cfg.validate.b2.value_or(eq.b2_star);
  }
  const SimStats stats = simulate_auctions(cfg.market, b1, b2, cfg.validate.sim);
  json doc = to_json(stats);
  doc["shards"] = cfg.validate.sim.shards;
  doc["b1"] = b1;
  doc["b2"] = b2;

  // Analytic payoff at the intended bids against its sampled counterpart.
  json checks = json::array();
  for (const Bidder bidder : {Bidder::First, Bidder::Second}) {
    const double own = bidder == Bidder::First ? b1 : b2;
    const double opp = bidder == Bidder::First ? b2 : b1;
    const double analytic = payoff(cfg.market, bidder, own, opp);
    const Estimate empirical = empirical_payoff(cfg.market, bidder, own, opp, cfg.validate.sim);
    const double z = empirical.std_error > 0.0
                         ? (empirical.mean - analytic) / empirical.std_error
                         : 0.0;
    checks.push_back({{"bidder", index(bidder) + 1},
                      {"analytic", analytic},
                      {"empirical", estimate_json(empirical)},
                      {"z", z}});
  }
  doc["payoff_check"] = checks;
  write_json(doc, out_dir / "simstats.json", out);
  return 0;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const Command c : {Command::Solve, Command::Iterate, Command::Probe, Command::Extremal,
                          Command::Counterexample, Command::Validate, Command::BrCurve}) {
    if (command_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view command_name(Command command) {
  switch (command) {
    case Command::Solve: return "solve";
    case Command::Iterate: return "iterate";
    case Command::Probe: return "probe";
    case Command::Extremal: return "extremal";
    case Command::Counterexample: return "counterexample";
    case Command::Validate: return "validate";
    case Command::BrCurve: return "br-curve";
  }
  return "unknown";
}

json to_json(const EquilibriumReport& r) {
  return {{"command", "solve"},
          {"start", r.trace.start},
          {"b1_star", r.b1_star},
          {"b2_star", r.b2_star},
          {"foc_residuals", json::array({number_or_null(r.foc_residuals.first),
                                         number_or_null(r.foc_residuals.second)})},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"stop_reason", std::string(stop_reason_name(r.trace.stop_reason))},
          {"direction", std::string(direction_name(r.trace.direction))}};
}

json to_json(const UniquenessReport& r, double tol) {
  json limits = json::array();
  for (const auto& l : r.limits) {
    limits.push_back({{"start", l.start}, {"b1", l.b1}, {"b2", l.b2}, {"converged", l.converged}});
  }
  return {{"command", "probe"},
          {"limits", limits},
          {"max_spread", r.max_spread},
          {"threshold", 100.0 * tol},
          {"pass", r.pass}};
}

json to_json(const ExtremalReport& r) {
  return {{"command", "extremal"},
          {"lower_pair", pair_json(r.lower_pair)},
          {"upper_pair", pair_json(r.upper_pair)},
          {"spread", r.spread},
          {"coincide", r.coincide}};
}

json to_json(const counterexample::EquilibriumInterval& interval, double v) {
  json doc{{"command", "counterexample"},
           {"v", v},
           {"fixed_points", interval.fixed_points},
           {"grid_points", interval.grid_points},
           {"low_resolution", interval.low_resolution}};
  doc["interval"] = interval.fixed_points > 0 ? json::array({interval.lo, interval.hi})
                                              : json(nullptr);
  return doc;
}

json to_json(const SimStats& s) {
  return {{"command", "validate"},
          {"n", s.n},
          {"seed", s.seed},
          {"win_rate", json::array({estimate_json(s.win_rate[0]), estimate_json(s.win_rate[1])})},
          {"mean_payoff",
           json::array({estimate_json(s.mean_payoff[0]), estimate_json(s.mean_payoff[1])})},
          {"buyer_win_rate", estimate_json(s.buyer_win_rate)},
          {"mean_buyer_cost", estimate_json(s.mean_buyer_cost)},
          {"mean_overpayment", estimate_json(s.mean_overpayment)}};
}

void write_trace_csv(const IterationTrace& trace, std::ostream& out) {
  out << "k,b1,b2\n";
  for (const auto& step : trace.steps) {
    out << step.k << ',' << fmt(step.b1) << ',' << fmt(step.b2) << '\n';
  }
}

int dispatch(Command command, const RunConfig& cfg, const std::filesystem::path& out_dir,
             std::ostream& out) {
  std::filesystem::create_directories(out_dir);
  const MarketConfig& market = cfg.market;
  const double v = market.value();

  switch (command) {
    case Command::Solve: {
      write_json(to_json(equilibrium(market, cfg.start, cfg.solver)), out_dir / "equilibrium.json",
                 out);
      return 0;
    }
    case Command::Iterate: {
      const IterationTrace trace = iterate(market, cfg.start, cfg.solver);
      auto file = open_output(out_dir / "trace.csv");
      write_trace_csv(trace, file);
      out << json{{"command", "iterate"},
                  {"start", trace.start},
                  {"steps", trace.steps.size()},
                  {"direction", std::string(direction_name(trace.direction))},
                  {"stop_reason", std::string(stop_reason_name(trace.stop_reason))},
                  {"monotone", is_monotone(trace)},
                  {"file", (out_dir / "trace.csv").string()}}
                 .dump(2)
          << '\n';
      return 0;
    }
    case Command::Probe: {
      const UniquenessReport report = uniqueness_probe(market, cfg.starts, cfg.solver);
      write_json(to_json(report, cfg.solver.tol), out_dir / "probe.json", out);
      return 0;
    }
    case Command::Extremal: {
      write_json(to_json(extremal_equilibria(market, cfg.solver)), out_dir / "extremal.json", out);
      return 0;
    }
    case Command::Counterexample: {
      const auto interval = counterexample::equilibrium_interval(v, cfg.counterexample_resolution);
      std::vector<std::pair<double, double>> rows;
      const std::size_t points = 200;
      for (std::size_t j = 1; j <= points; ++j) {
        const double b_opp = v * static_cast<double>(j) / points;
        rows.emplace_back(b_opp, counterexample::piecewise_br(v, b_opp));
      }
      write_br_curve(rows, out_dir / "counterexample_br.csv");
      write_json(to_json(interval, v), out_dir / "counterexample.json", out);
      return 0;
    }
    case Command::Validate:
      return run_validate(cfg, out_dir, out);
    case Command::BrCurve: {
      std::vector<std::pair<double, double>> rows;
      const std::size_t points = cfg.br_curve.points;
      for (std::size_t j = 1; j <= points; ++j) {
        const double b_opp = v * static_cast<double>(j) / static_cast<double>(points);
        rows.emplace_back(b_opp, best_response(market, cfg.br_curve.bidder, b_opp).bid);
      }
      write_br_curve(rows, out_dir / "br_curve.csv");
      out << json{{"command", "br-curve"},
                  {"bidder", index(cfg.br_curve.bidder) + 1},
                  {"points", points},
                  {"file", (out_dir / "br_curve.csv").string()}}
                 .dump(2)
          << '\n';
      return 0;
    }
  }
  return 1;
}

}  // namespace sbs
