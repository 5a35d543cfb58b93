#include "sbs/config.hpp"

#include <cmath>
#include <set>
#include <string>

#include "sbs/error.hpp"

namespace sbs {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::SchemaError, "\"" + key + "\": " + what);
}

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      schema_error(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

const json& require_object(const json& parent, const std::string& key, const std::string& path) {
  if (!parent.contains(key)) schema_error(path, "missing required key");
  const json& value = parent.at(key);
  if (!value.is_object()) schema_error(path, "must be an object");
  return value;
}

double number_at(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) schema_error(path, "missing required key");
  const json& value = obj.at(key);
  if (!value.is_number()) schema_error(path, "must be a number");
  return value.get<double>();
}

double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
  return obj.contains(key) ? number_at(obj, key, path) : fallback;
}

std::uint64_t count_or(const json& obj, const std::string& key, const std::string& path,
                       std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& value = obj.at(key);
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    schema_error(path, "must be a nonnegative integer");
  }
  return value.get<std::uint64_t>();
}

Cdf parse_dist(const json& doc, const std::string& key) {
  const json& obj = require_object(doc, key, key);
  if (!obj.contains("family") || !obj.at("family").is_string()) {
    schema_error(key + ".family", "missing or not a string");
  }
  const std::string family = obj.at("family").get<std::string>();
  if (family == "power") {
    reject_unknown(obj, key, {"family", "k", "c"});
    return Cdf::power(number_at(obj, "k", key + ".k"), number_at(obj, "c", key + ".c"));
  }
  if (family == "exponential") {
    reject_unknown(obj, key, {"family", "rate"});
    return Cdf::exponential(number_at(obj, "rate", key + ".rate"));
  }
  if (family == "lognormal") {
    reject_unknown(obj, key, {"family", "sigma"});
    return Cdf::lognormal(number_at(obj, "sigma", key + ".sigma"));
  }
  if (family == "capped_linear") {
    reject_unknown(obj, key, {"family"});
    return Cdf::capped_linear();
  }
  schema_error(key + ".family", "unknown family \"" + family + "\"");
}

Mode parse_mode(const json& doc) {
  if (!doc.contains("mode")) return Mode::Standard;
  const json& value = doc.at("mode");
  if (value == "standard") return Mode::Standard;
  if (value == "counterexample") return Mode::Counterexample;
  schema_error("mode", "must be \"standard\" or \"counterexample\"");
}

}  // namespace

std::vector<double> default_starts(double v) { return {0.0, v / 4.0, v / 2.0, 3.0 * v / 4.0, v}; }

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) schema_error("<root>", "config must be a JSON object");
  reject_unknown(doc, "", {"v", "mode", "Q", "N1", "N2", "solver", "start", "starts", "br_curve",
                           "montecarlo", "counterexample"});

  const double v = number_at(doc, "v", "v");
  const Mode mode = parse_mode(doc);
  // Smoothness is checked before the remaining schema so a kinked Q is
  // reported as such even in an otherwise partial document.
  Cdf q = parse_dist(doc, "Q");
  if (mode == Mode::Standard && !q.is_smooth()) {
    throw Error(ErrorCode::NonSmoothFamily,
                "Q uses capped_linear, whose kink violates the smoothness assumption; "
                "set \"mode\": \"counterexample\"");
  }
  Cdf n1 = parse_dist(doc, "N1");
  Cdf n2 = parse_dist(doc, "N2");

  RunConfig cfg{.market = MarketConfig(v, q, n1, n2, mode)};

  if (doc.contains("solver")) {
    const json& solver = require_object(doc, "solver", "solver");
    reject_unknown(solver, "solver", {"tol", "max_iter"});
    cfg.solver.tol = number_or(solver, "tol", "solver.tol", cfg.solver.tol);
    cfg.solver.max_iter = count_or(solver, "max_iter", "solver.max_iter", cfg.solver.max_iter);
    if (!(cfg.solver.tol > 0.0)) schema_error("solver.tol", "must be positive");
    if (cfg.solver.max_iter < 1) schema_error("solver.max_iter", "must be >= 1");
  }

  cfg.start = number_or(doc, "start", "start", 0.0);
  if (!(cfg.start >= 0.0 && cfg.start <= v)) schema_error("start", "must lie in [0, v]");

  if (doc.contains("starts")) {
    const json& starts = doc.at("starts");
    if (!starts.is_array()) schema_error("starts", "must be an array of numbers");
    for (const auto& s : starts) {
      if (!s.is_number()) schema_error("starts", "must be an array of numbers");
      cfg.starts.push_back(s.get<double>());
    }
  } else {
    cfg.starts = default_starts(v);
  }

  if (doc.contains("br_curve")) {
    const json& curve = require_object(doc, "br_curve", "br_curve");
    reject_unknown(curve, "br_curve", {"bidder", "points"});
    const auto bidder = count_or(curve, "bidder", "br_curve.bidder", 1);
    if (bidder != 1 && bidder != 2) schema_error("br_curve.bidder", "must be 1 or 2");
    cfg.br_curve.bidder = bidder == 1 ? Bidder::First : Bidder::Second;
    cfg.br_curve.points = count_or(curve, "points", "br_curve.points", cfg.br_curve.points);
    if (cfg.br_curve.points < 2) schema_error("br_curve.points", "must be >= 2");
  }

  if (doc.contains("montecarlo")) {
    const json& mc = require_object(doc, "montecarlo", "montecarlo");
    reject_unknown(mc, "montecarlo", {"n", "seed", "shards", "b1", "b2"});
    cfg.validate.sim.n = count_or(mc, "n", "montecarlo.n", cfg.validate.sim.n);
    cfg.validate.sim.seed = count_or(mc, "seed", "montecarlo.seed", cfg.validate.sim.seed);
    cfg.validate.sim.shards =
        static_cast<unsigned>(count_or(mc, "shards", "montecarlo.shards", cfg.validate.sim.shards));
    if (mc.contains("b1")) cfg.validate.b1 = number_at(mc, "b1", "montecarlo.b1");
    if (mc.contains("b2")) cfg.validate.b2 = number_at(mc, "b2", "montecarlo.b2");
  }

  if (doc.contains("counterexample")) {
    const json& ce = require_object(doc, "counterexample", "counterexample");
    reject_unknown(ce, "counterexample", {"resolution"});
    cfg.counterexample_resolution =
        number_or(ce, "resolution", "counterexample.resolution", cfg.counterexample_resolution);
    if (!(cfg.counterexample_resolution > 0.0)) {
      schema_error("counterexample.resolution", "must be positive");
    }
  }
  return cfg;
}

nlohmann::json to_json(const Cdf& dist) {
  json out{{"family", std::string(dist.family_name())}};
  const auto& p = dist.params();
  if (const auto* power = std::get_if<PowerOnInterval>(&p)) {
    out["k"] = power->exponent;
    out["c"] = power->cap;
  } else if (const auto* expo = std::get_if<Exponential>(&p)) {
    out["rate"] = expo->rate;
  } else if (const auto* logn = std::get_if<LogNormal>(&p)) {
    out["sigma"] = logn->sigma;
  }
  return out;
}

nlohmann::json to_json(const RunConfig& cfg) {
  const MarketConfig& m = cfg.market;
  json out{
      {"v", m.value()},
      {"mode", m.mode() == Mode::Standard ? "standard" : "counterexample"},
      {"Q", to_json(m.competition())},
      {"N1", to_json(m.noise(Bidder::First))},
      {"N2", to_json(m.noise(Bidder::Second))},
      {"solver", {{"tol", cfg.solver.tol}, {"max_iter", cfg.solver.max_iter}}},
      {"start", cfg.start},
      {"starts", cfg.starts},
      {"br_curve", {{"bidder", index(cfg.br_curve.bidder) + 1}, {"points", cfg.br_curve.points}}},
      {"counterexample", {{"resolution", cfg.counterexample_resolution}}},
  };
  json mc{{"n", cfg.validate.sim.n}, {"seed", cfg.validate.sim.seed},
          {"shards", cfg.validate.sim.shards}};
  if (cfg.validate.b1) mc["b1"] = *cfg.validate.b1;
  if (cfg.validate.b2) mc["b2"] = *cfg.validate.b2;
  out["montecarlo"] = mc;
  return out;
}

}  // namespace sbs
