#ifndef LUCELAB_CLI_HPP
#define LUCELAB_CLI_HPP

#include <string>

#include "lucelab/errors.hpp"
#include "lucelab/harness.hpp"

namespace lucelab {

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

struct CliOptions {
    ScenarioConfig config;
    int workers = 0;  // 0: available parallelism
    std::string out_dir = "results";
    std::string format = "csv";
    bool keep_trajectories = false;
};

// Precedence: CLI flag > config-file field > built-in default. Seed
// falls back to the LUCELAB_SEED environment variable. Throws
// ConfigError on unknown flags, bad values, or an infeasible scenario;
// help request is signalled via HelpRequested.
struct HelpRequested {
    std::string text;
};
CliOptions parse_invocation(int argc, const char* const* argv);

// Writes summary.json, estimates.csv (or .json), optional
// trajectory.csv, and config.echo.json into out_dir. Numbers are
// written with 17 significant digits so re-parsing round-trips.
void emit_results(const CliOptions& options, const ExperimentSummary& summary,
                  double wall_seconds);

// Flat JSON encoding of the options; config.echo.json content.
std::string options_to_json(const CliOptions& options);
CliOptions options_from_json(const std::string& json_text);

}  // namespace lucelab

#endif  // LUCELAB_CLI_HPP
