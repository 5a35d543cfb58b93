// sbs: equilibrium analysis of side-by-side bidding in first-price auctions.
//
//   sbs solve          --config market.json [--out DIR]
//   sbs iterate        --config market.json [--start B2]
//   sbs probe          --config market.json [--starts 0,0.5,1]
//   sbs extremal       --config market.json
//   sbs counterexample [--config market.json | --v 1]
//   sbs validate       --config market.json [--n N] [--seed S] [--shards K]
//   sbs br-curve       --config market.json
//
// Set SBS_LOG=debug|info|warn|error|off to control stderr diagnostics.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbs/commands.hpp"
#include "sbs/config.hpp"
#include "sbs/error.hpp"

namespace {

enum class LogLevel { Debug = 0, Info, Warn, Error, Off };

LogLevel log_level() {
  const char* env = std::getenv("SBS_LOG");
  const std::string level = env ? env : "warn";
  if (level == "debug") return LogLevel::Debug;
  if (level == "info") return LogLevel::Info;
  if (level == "error") return LogLevel::Error;
  if (level == "off") return LogLevel::Off;
  return LogLevel::Warn;
}

void log(LogLevel level, const std::string& message) {
  static const LogLevel threshold = log_level();
  if (level < threshold) return;
  static constexpr const char* kNames[] = {"debug", "info", "warn", "error"};
  std::cerr << "[sbs " << kNames[static_cast<int>(level)] << "] " << message << '\n';
}

int report_error(std::string_view name, const std::string& message, int status) {
  std::cerr << nlohmann::json{{"error", std::string(name)}, {"message", message}}.dump() << '\n';
  return status;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sbs::Error(sbs::ErrorCode::IoError, "cannot read config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Side-by-side bidding: best-response dynamics and equilibrium analysis"};
  app.require_subcommand(0, 0);

  std::string command_text;
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n;
  std::optional<unsigned> shards;
  std::optional<double> start;
  std::optional<double> value;
  std::vector<double> starts;

  app.add_option("command", command_text,
                 "solve | iterate | probe | extremal | counterexample | validate | br-curve")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "Monte Carlo seed");
  app.add_option("--n", n, "Monte Carlo sample count");
  app.add_option("--shards", shards, "Monte Carlo worker shards");
  app.add_option("--start", start, "initial b2 for solve / iterate");
  app.add_option("--starts", starts, "probe starts, comma separated")->delimiter(',');
  app.add_option("--v", value, "value for counterexample without a config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("UsageError", e.what(), 2);
  }

  const auto command = sbs::parse_command(command_text);
  if (!command) return report_error("UsageError", "unknown command \"" + command_text + "\"", 2);

  try {
    nlohmann::json doc;
    if (!config_path.empty()) {
      try {
        doc = nlohmann::json::parse(read_file(config_path));
      } catch (const nlohmann::json::parse_error& e) {
        throw sbs::Error(sbs::ErrorCode::SchemaError, std::string("config is not valid JSON: ") + e.what());
      }
    } else if (*command == sbs::Command::Counterexample) {
      const nlohmann::json capped{{"family", "capped_linear"}};
      doc = {{"v", value.value_or(1.0)}, {"mode", "counterexample"},
             {"Q", capped}, {"N1", capped}, {"N2", capped}};
    } else {
      return report_error("UsageError", "--config is required for " + command_text, 2);
    }
    if (value && doc.is_object()) doc["v"] = *value;
    if (start) doc["start"] = *start;
    if (!starts.empty()) doc["starts"] = starts;

    sbs::RunConfig cfg = sbs::config_from_json(doc);
    if (seed) cfg.validate.sim.seed = *seed;
    if (n) cfg.validate.sim.n = *n;
    if (shards) cfg.validate.sim.shards = *shards;
    log(LogLevel::Debug, "config: " + sbs::to_json(cfg).dump());

    const auto t0 = std::chrono::steady_clock::now();
    const int status = sbs::dispatch(*command, cfg, out_dir, std::cout);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    log(LogLevel::Info, command_text + " finished in " + std::to_string(elapsed.count()) + " s");
    return status;
  } catch (const sbs::Error& e) {
    const int status = e.code() == sbs::ErrorCode::SchemaError ? 2 : 1;
    return report_error(e.name(), e.what(), status);
  } catch (const std::exception& e) {
    return report_error("InternalError", e.what(), 1);
  }
}
