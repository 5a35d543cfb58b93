#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "sbs/config.hpp"
#include "sbs/counterexample.hpp"
#include "sbs/dynamics.hpp"
#include "sbs/montecarlo.hpp"

namespace sbs {

enum class Command { Solve, Iterate, Probe, Extremal, Counterexample, Validate, BrCurve };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command command);

// Output schemas. Every JSON document carries "command"; CSV files have a
// fixed header line.
nlohmann::json to_json(const EquilibriumReport& report);
nlohmann::json to_json(const UniquenessReport& report, double tol);
nlohmann::json to_json(const ExtremalReport& report);
nlohmann::json to_json(const counterexample::EquilibriumInterval& interval, double v);
nlohmann::json to_json(const SimStats& stats);

/// Header "k,b1,b2", one row per round k >= 1.
void write_trace_csv(const IterationTrace& trace, std::ostream& out);

/// Runs one command, writes its output file(s) under out_dir and prints the
/// JSON summary to `out`. Returns the process exit status.
int dispatch(Command command, const RunConfig& cfg, const std::filesystem::path& out_dir,
             std::ostream& out);

}  // namespace sbs
