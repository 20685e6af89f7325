#pragma once

// Command-line front end. All logic lives here so tests can drive it
// in-process; the executable only forwards argv.

#include "wellspec/model.hpp"

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wellspec::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_numerical = 2,
    exit_mismatch = 3,
};

/// Bad flags or config values.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Range {
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
};

struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n = 0;
};

struct RunConfig {
    std::string command; // levels, sweep, green-grid, table1, verify
    PotentialFamily family = default_family(FamilyTag::ho);
    /// verify only: run every family at its defaults.
    bool all_families = false;
    std::optional<std::pair<double, double>> window;
    double step = 0.005;
    std::optional<std::size_t> count;
    std::optional<std::string> param;
    std::optional<Range> range;
    std::optional<Grid> grid;
    std::optional<double> energy;
    std::optional<std::string> out;
    std::string format = "csv";
    bool allow_breaks = false;
    unsigned threads = 0;
};

const std::vector<std::string>& commands();

/// Fills every optional field with the command's default for the family.
RunConfig resolved(const RunConfig& config);

/// Throws UsageError naming the first invalid field.
void validate(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);
/// Fields missing from the object keep the values already in `base`.
RunConfig config_from_json(const nlohmann::json& doc, RunConfig base = {});

/// Applies one key=value override: a RunConfig field or a family parameter.
void apply_setting(RunConfig& config, const std::string& assignment);

/// Parses --family: a tag ("HO", "DELTA_DECORATED:LINEAR_ABS"), "all", or a JSON object.
void apply_family(RunConfig& config, const std::string& spec);

/// Default energy, grid, parameter and sweep range used by figure commands.
double default_energy(const PotentialFamily& family);
Grid default_grid(const PotentialFamily& family);
Range default_range(const PotentialFamily& family, const std::string& param);

/// Fixed 12-significant-digit formatting shared by every output.
std::string format_number(double v);

/// Reference values used by the table1 command.
const std::vector<double>& table1_reference();

int cmd_levels(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_green_grid(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_table1(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line without the program name. Writes results to `out`
/// (or the --out file) and diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wellspec::cli
