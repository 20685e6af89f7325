#include "wellspec/cli.hpp"

#include "wellspec/errors.hpp"
#include "wellspec/spectrum.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace wellspec::cli {

namespace {

using nlohmann::json;

constexpr std::size_t max_grid_points = 2001;
constexpr std::size_t max_sweep_points = 100000;

double parse_number(std::string_view text, const std::string& field) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw UsageError("invalid value for field '" + field + "': '" + std::string(text) + "' is not a number");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

std::vector<double> parse_tuple(std::string_view text, std::size_t arity, const std::string& field) {
    const auto parts = split(text, ':');
    if (parts.size() != arity) {
        throw UsageError("invalid value for field '" + field + "': expected " + std::to_string(arity) +
                         " colon-separated numbers, got '" + std::string(text) + "'");
    }
    std::vector<double> out;
    for (const auto& p : parts) {
        out.push_back(parse_number(p, field));
    }
    return out;
}

std::size_t parse_count(double v, const std::string& field) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e9) {
        throw UsageError("invalid value for field '" + field + "': expected a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

bool parse_bool(std::string_view text, const std::string& field) {
    if (text == "true" || text == "1") {
        return true;
    }
    if (text == "false" || text == "0") {
        return false;
    }
    throw UsageError("invalid value for field '" + field + "': expected true or false");
}

std::pair<double, double> window_from(const std::vector<double>& v) { return {v[0], v[1]}; }
Range range_from(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }
Grid grid_from(const std::vector<double>& v) { return {v[0], v[1], parse_count(v[2], "grid")}; }

std::vector<double> json_numbers(const json& v, std::size_t arity, const std::string& field) {
    if (v.is_string()) {
        return parse_tuple(v.get<std::string>(), arity, field);
    }
    if (!v.is_array() || v.size() != arity) {
        throw UsageError("invalid value for field '" + field + "': expected an array of " + std::to_string(arity) +
                         " numbers");
    }
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) {
            throw UsageError("invalid value for field '" + field + "': expected numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

double json_number(const json& v, const std::string& field) {
    if (!v.is_number()) {
        throw UsageError("invalid value for field '" + field + "': expected a number");
    }
    return v.get<double>();
}

std::string json_string(const json& v, const std::string& field) {
    if (!v.is_string()) {
        throw UsageError("invalid value for field '" + field + "': expected a string");
    }
    return v.get<std::string>();
}

bool is_linear(const PotentialFamily& f) {
    return f.tag == FamilyTag::linear_abs || f.tag == FamilyTag::linear_asym ||
           (f.tag == FamilyTag::delta_decorated && f.base == FamilyTag::linear_abs);
}

} // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = {"levels", "sweep", "green-grid", "table1", "verify"};
    return names;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double default_energy(const PotentialFamily& family) {
    if (family.tag == FamilyTag::delta_decorated) {
        return family.base == FamilyTag::linear_abs ? 1.1 : 2.0;
    }
    return is_linear(family) ? 2.3 : 2.0;
}

Grid default_grid(const PotentialFamily& family) {
    if (is_linear(family)) {
        return {-6.0, 6.0, 121};
    }
    return {-4.0, 4.0, 81};
}

Range default_range(const PotentialFamily& family, const std::string& param) {
    (void)family;
    if (param == "lambda") {
        return {0.05, 3.0, 0.01};
    }
    if (param == "beta") {
        return {0.2, 2.0, 0.01};
    }
    if (param == "xi") {
        return {0.2, 3.0, 0.01};
    }
    if (param == "mu_phi") {
        return {0.0, 3.0, 0.01};
    }
    if (param == "alpha3") {
        return {0.0, 2.0, 0.01};
    }
    if (param == "tau") {
        return {-1.2, 1.2, 0.01};
    }
    if (param == "p") {
        return {0.0, 4.0, 0.01};
    }
    if (param == "eta") {
        return {-1.0, 1.0, 0.01};
    }
    if (param == "zeta_q") {
        return {0.0, 4.0, 0.01};
    }
    throw UsageError("invalid value for field 'param': no default range for '" + param + "'");
}

RunConfig resolved(const RunConfig& config) {
    RunConfig c = config;
    if (c.command == "levels" || c.command == "verify" || c.command == "table1") {
        if (!c.count) {
            c.count = c.command == "levels" ? 10 : 5;
        }
    }
    if (c.command == "levels" && !c.window) {
        c.window = spectrum::characteristic(c.family).default_window;
    }
    if (c.command == "sweep") {
        if (!c.count) {
            c.count = 5;
        }
        if (!c.param) {
            const auto params = sweep_parameters(c.family);
            if (params.empty()) {
                throw UsageError("invalid value for field 'family': " + c.family.name() +
                                 " has no sweep parameters");
            }
            c.param = params.front();
        }
        if (!c.range) {
            c.range = default_range(c.family, *c.param);
        }
    }
    if (c.command == "green-grid") {
        if (!c.grid) {
            c.grid = default_grid(c.family);
        }
        if (!c.energy) {
            c.energy = default_energy(c.family);
        }
    }
    if (c.command == "verify" && !c.all_families && !c.energy) {
        c.energy = default_energy(c.family);
    }
    return c;
}

void validate(const RunConfig& c) {
    if (std::find(commands().begin(), commands().end(), c.command) == commands().end()) {
        throw UsageError("invalid value for field 'command': '" + c.command + "'");
    }
    if (c.all_families && c.command != "verify") {
        throw UsageError("invalid value for field 'family': 'all' is only accepted by verify");
    }
    try {
        c.family.validate();
    } catch (const ParameterError& e) {
        throw UsageError(std::string("invalid value for field 'family': ") + e.what());
    }
    if (!(std::isfinite(c.step) && c.step > 0.0)) {
        throw UsageError("invalid value for field 'step': must be finite and > 0");
    }
    if (c.window && !(std::isfinite(c.window->first) && std::isfinite(c.window->second) &&
                      c.window->first < c.window->second)) {
        throw UsageError("invalid value for field 'window': need finite lo < hi");
    }
    if (c.count && (*c.count == 0 || (c.command == "verify" && *c.count > 50))) {
        throw UsageError("invalid value for field 'count': must be >= 1 (and <= 50 for verify)");
    }
    if (c.range) {
        const auto& r = *c.range;
        if (!(std::isfinite(r.from) && std::isfinite(r.to) && std::isfinite(r.step) && r.step > 0.0 &&
              r.from <= r.to)) {
            throw UsageError("invalid value for field 'range': need finite from <= to and step > 0");
        }
        if ((r.to - r.from) / r.step > static_cast<double>(max_sweep_points)) {
            throw UsageError("invalid value for field 'range': more than 100000 points");
        }
    }
    if (c.grid) {
        const auto& g = *c.grid;
        if (!(std::isfinite(g.x_min) && std::isfinite(g.x_max) && g.x_min < g.x_max)) {
            throw UsageError("invalid value for field 'grid': need finite xmin < xmax");
        }
        if (g.n < 2 || g.n > max_grid_points) {
            throw UsageError("invalid value for field 'grid': n must be in [2, 2001]");
        }
    }
    if (c.energy && !std::isfinite(*c.energy)) {
        throw UsageError("invalid value for field 'energy': must be finite");
    }
    if (c.format != "csv" && c.format != "json") {
        throw UsageError("invalid value for field 'format': '" + c.format + "' (expected csv or json)");
    }
}

json to_json(const RunConfig& c) {
    json doc = json::object();
    doc["command"] = c.command;
    doc["family"] = c.all_families ? json("all") : json::parse(wellspec::to_json(c.family));
    if (c.window) {
        doc["window"] = {c.window->first, c.window->second};
    }
    doc["step"] = c.step;
    if (c.count) {
        doc["count"] = *c.count;
    }
    if (c.param) {
        doc["param"] = *c.param;
    }
    if (c.range) {
        doc["range"] = {c.range->from, c.range->to, c.range->step};
    }
    if (c.grid) {
        doc["grid"] = {c.grid->x_min, c.grid->x_max, c.grid->n};
    }
    if (c.energy) {
        doc["energy"] = *c.energy;
    }
    if (c.out) {
        doc["out"] = *c.out;
    }
    doc["format"] = c.format;
    doc["allow_breaks"] = c.allow_breaks;
    doc["threads"] = c.threads;
    return doc;
}

RunConfig config_from_json(const json& doc, RunConfig base) {
    if (!doc.is_object()) {
        throw UsageError("config: expected a JSON object");
    }
    RunConfig c = std::move(base);
    for (const auto& [key, v] : doc.items()) {
        if (key == "command") {
            c.command = json_string(v, key);
        } else if (key == "family") {
            if (v.is_string()) {
                apply_family(c, v.get<std::string>());
            } else {
                apply_family(c, v.dump());
            }
        } else if (key == "window") {
            c.window = window_from(json_numbers(v, 2, key));
        } else if (key == "step") {
            c.step = json_number(v, key);
        } else if (key == "count") {
            c.count = parse_count(json_number(v, key), key);
        } else if (key == "param") {
            c.param = json_string(v, key);
        } else if (key == "range") {
            c.range = range_from(json_numbers(v, 3, key));
        } else if (key == "grid") {
            c.grid = grid_from(json_numbers(v, 3, key));
        } else if (key == "energy") {
            c.energy = json_number(v, key);
        } else if (key == "out") {
            c.out = json_string(v, key);
        } else if (key == "format") {
            c.format = json_string(v, key);
        } else if (key == "allow_breaks") {
            if (!v.is_boolean()) {
                throw UsageError("invalid value for field 'allow_breaks': expected true or false");
            }
            c.allow_breaks = v.get<bool>();
        } else if (key == "threads") {
            c.threads = static_cast<unsigned>(parse_count(json_number(v, key), key));
        } else {
            throw UsageError("config: unknown field '" + key + "'");
        }
    }
    return c;
}

void apply_family(RunConfig& config, const std::string& spec) {
    const auto first = spec.find_first_not_of(" \t\n");
    if (first != std::string::npos && spec[first] == '{') {
        try {
            config.family = family_from_json(spec);
        } catch (const ParameterError& e) {
            throw UsageError(std::string("invalid value for field 'family': ") + e.what());
        }
        config.all_families = false;
        return;
    }
    std::string text = spec;
    std::transform(text.begin(), text.end(), text.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (text == "ALL") {
        config.all_families = true;
        return;
    }
    std::string base_text;
    if (const auto pos = text.find_first_of(":("); pos != std::string::npos) {
        base_text = text.substr(pos + 1);
        if (!base_text.empty() && base_text.back() == ')') {
            base_text.pop_back();
        }
        text.resize(pos);
    }
    const auto tag = parse_tag(text);
    if (!tag) {
        throw UsageError("invalid value for field 'family': unknown tag '" + spec + "'");
    }
    FamilyTag base = FamilyTag::ho;
    if (!base_text.empty()) {
        const auto b = parse_tag(base_text);
        if (!b || *tag != FamilyTag::delta_decorated || (*b != FamilyTag::ho && *b != FamilyTag::linear_abs)) {
            throw UsageError("invalid value for field 'family': bad base in '" + spec + "'");
        }
        base = *b;
    }
    config.family = default_family(*tag, base);
    config.all_families = false;
}

void apply_setting(RunConfig& c, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw UsageError("--set expects key=value, got '" + assignment + "'");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    if (key == "command") {
        c.command = value;
    } else if (key == "family") {
        apply_family(c, value);
    } else if (key == "window") {
        c.window = window_from(parse_tuple(value, 2, key));
    } else if (key == "step") {
        c.step = parse_number(value, key);
    } else if (key == "count") {
        c.count = parse_count(parse_number(value, key), key);
    } else if (key == "param") {
        c.param = value;
    } else if (key == "range") {
        c.range = range_from(parse_tuple(value, 3, key));
    } else if (key == "grid") {
        c.grid = grid_from(parse_tuple(value, 3, key));
    } else if (key == "energy") {
        c.energy = parse_number(value, key);
    } else if (key == "out") {
        c.out = value;
    } else if (key == "format") {
        c.format = value;
    } else if (key == "allow_breaks") {
        c.allow_breaks = parse_bool(value, key);
    } else if (key == "threads") {
        c.threads = static_cast<unsigned>(parse_count(parse_number(value, key), key));
    } else {
        const double v = parse_number(value, key);
        try {
            c.family = with_parameter(c.family, key, v);
        } catch (const ParameterError& e) {
            throw UsageError("invalid value for field '" + key + "': " + e.what());
        }
    }
}

} // namespace wellspec::cli
