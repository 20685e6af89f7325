#include "wellspec/cli.hpp"

#include "wellspec/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace wellspec::cli {

namespace {

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
    return config_from_json(doc);
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.command == "levels") {
        return cmd_levels(c, out, err);
    }
    if (c.command == "sweep") {
        return cmd_sweep(c, out, err);
    }
    if (c.command == "green-grid") {
        return cmd_green_grid(c, out, err);
    }
    if (c.command == "table1") {
        return cmd_table1(c, out, err);
    }
    return cmd_verify(c, out, err);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bound states and Green functions of one-dimensional confining potentials", "wellspec"};
    std::string command, family, config_path, window, range, grid, out_path, format, param;
    std::vector<std::string> settings;
    double step = 0.0, energy = 0.0;
    std::size_t count = 0;
    unsigned threads = 0;
    bool allow_breaks = false, dump_config = false;

    app.add_option("command", command, "levels | sweep | green-grid | table1 | verify");
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--family", family, "family tag (e.g. HO, DELTA_DECORATED:LINEAR_ABS), JSON object, or all");
    app.add_option("--set", settings, "key=value override (config field or family parameter)");
    app.add_option("--window", window, "scan window lo:hi in the spectral variable");
    app.add_option("--step", step, "scan step");
    app.add_option("--count", count, "number of levels");
    app.add_option("--param", param, "sweep parameter");
    app.add_option("--range", range, "sweep range from:to:step");
    app.add_option("--grid", grid, "green-grid points xmin:xmax:n");
    app.add_option("--energy", energy, "energy for green-grid and verify");
    app.add_option("--out", out_path, "write results to this file");
    app.add_option("--format", format, "csv or json");
    app.add_option("--threads", threads, "sweep worker threads (0: all cores)");
    app.add_flag("--allow-breaks", allow_breaks, "emit sweeps even when curve continuity breaks");
    app.add_flag("--dump-config", dump_config, "print the resolved config as JSON and exit");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    std::ostringstream buffer;
    int code = exit_ok;
    RunConfig config;
    try {
        if (!config_path.empty()) {
            config = load_config_file(config_path);
        }
        if (!command.empty()) {
            config.command = command;
        }
        if (!family.empty()) {
            apply_family(config, family);
        }
        if (app.count("--window")) {
            apply_setting(config, "window=" + window);
        }
        if (app.count("--step")) {
            config.step = step;
        }
        if (app.count("--count")) {
            config.count = count;
        }
        if (app.count("--param")) {
            config.param = param;
        }
        if (app.count("--range")) {
            apply_setting(config, "range=" + range);
        }
        if (app.count("--grid")) {
            apply_setting(config, "grid=" + grid);
        }
        if (app.count("--energy")) {
            config.energy = energy;
        }
        if (app.count("--out")) {
            config.out = out_path;
        }
        if (app.count("--format")) {
            config.format = format;
        }
        if (app.count("--threads")) {
            config.threads = threads;
        }
        if (allow_breaks) {
            config.allow_breaks = true;
        }
        for (const auto& s : settings) {
            apply_setting(config, s);
        }
        if (config.command.empty()) {
            throw UsageError("missing field 'command' (one of levels, sweep, green-grid, table1, verify)");
        }
        validate(config);
        config = resolved(config);
        validate(config);
        if (dump_config) {
            out << to_json(config).dump(2) << '\n';
            return exit_ok;
        }
        code = dispatch(config, buffer, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical;
    }

    if (config.out) {
        std::ofstream file(*config.out, std::ios::binary);
        if (!(file << buffer.str())) {
            err << "error: cannot write '" << *config.out << "'\n";
            return exit_usage;
        }
    } else {
        out << buffer.str();
    }
    return code;
}

} // namespace wellspec::cli
