#include "wellspec/cli.hpp"

#include "wellspec/errors.hpp"
#include "wellspec/oracle.hpp"
#include "wellspec/resolvent.hpp"
#include "wellspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>

namespace wellspec::cli {

namespace {

using nlohmann::json;

constexpr double table1_tolerance = 5e-5;

json num(double v) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return std::strtod(format_number(v).c_str(), nullptr);
}

json family_json(const PotentialFamily& f) { return json::parse(wellspec::to_json(f)); }

const char* variable_name(const PotentialFamily& f) {
    return spectral_variable(f) == SpectralVariable::eps ? "eps" : "rho";
}

std::string parity_label(const PotentialFamily& f, const spectrum::Root& r) {
    if (r.parity) {
        return to_string(*r.parity);
    }
    // Shifted oscillators: parity about the potential minimum alternates with the index.
    if (f.tag == FamilyTag::ho || f.tag == FamilyTag::ho_stark) {
        return r.index % 2 == 0 ? "even" : "odd";
    }
    return "none";
}

void report_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) {
        err << "warning: " << w << '\n';
    }
}

bool is_delta(const PotentialFamily& f) { return f.tag == FamilyTag::delta_decorated; }

std::vector<PotentialFamily> verify_families(const RunConfig& c) {
    if (!c.all_families) {
        return {c.family};
    }
    std::vector<PotentialFamily> out;
    for (const auto tag : all_tags()) {
        out.push_back(default_family(tag));
    }
    out.push_back(default_family(FamilyTag::delta_decorated, FamilyTag::linear_abs));
    return out;
}

struct VerifyRow {
    std::string family;
    std::string check;
    std::size_t index;
    double closed_form;
    double oracle;
    double discrepancy;
    double tolerance;
    bool pass;
};

} // namespace

const std::vector<double>& table1_reference() {
    static const std::vector<double> values = {0.50501, 1.27615, 1.88901, 2.43392, 2.94119,
                                               3.41789, 3.86844, 4.29867, 4.71332, 5.11461};
    return values;
}

int cmd_levels(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto chi = spectrum::characteristic(c.family);
    const auto result = spectrum::find_roots(chi, *c.window, c.step, c.count);
    report_warnings(result.warnings, err);
    if (c.format == "json") {
        json roots = json::array();
        for (const auto& r : result.roots) {
            roots.push_back({{"index", r.index},
                             {"parity", parity_label(c.family, r)},
                             {"value", num(r.value)},
                             {"residual", num(r.residual)},
                             {"bracket_lo", num(r.bracket_lo)},
                             {"bracket_hi", num(r.bracket_hi)}});
        }
        json doc = {{"command", "levels"},
                    {"family", family_json(c.family)},
                    {"variable", variable_name(c.family)},
                    {"window", {num(result.scan_window.first), num(result.scan_window.second)}},
                    {"step", num(c.step)},
                    {"roots", roots},
                    {"warnings", result.warnings}};
        out << doc.dump(2) << '\n';
        return exit_ok;
    }
    out << "index,parity,eps,residual,bracket_lo,bracket_hi\n";
    for (const auto& r : result.roots) {
        out << r.index << ',' << parity_label(c.family, r) << ',' << format_number(r.value) << ','
            << format_number(r.residual) << ',' << format_number(r.bracket_lo) << ','
            << format_number(r.bracket_hi) << '\n';
    }
    return exit_ok;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    spectrum::SweepOptions options;
    options.window = c.window;
    options.step = c.step;
    options.max_roots = *c.count;
    options.threads = c.threads;
    const auto result = spectrum::sweep(c.family, *c.param, c.range->from, c.range->to, c.range->step, options);
    for (const auto i : result.breaks) {
        err << (c.allow_breaks ? "warning: " : "error: ") << "curve break at " << *c.param << " = "
            << format_number(result.param_values[i]) << '\n';
    }
    if (!result.breaks.empty() && !c.allow_breaks) {
        return exit_numerical;
    }
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& r : result.rows) {
            rows.push_back({{"param_value", num(r.param_value)}, {"root_index", r.root_index}, {"value", num(r.value)}});
        }
        json breaks = json::array();
        for (const auto i : result.breaks) {
            breaks.push_back(num(result.param_values[i]));
        }
        json doc = {{"command", "sweep"},
                    {"family", family_json(c.family)},
                    {"param", *c.param},
                    {"variable", variable_name(c.family)},
                    {"rows", rows},
                    {"breaks", breaks}};
        out << doc.dump(2) << '\n';
        return exit_ok;
    }
    out << "param_value,root_index,eps\n";
    for (const auto& r : result.rows) {
        out << format_number(r.param_value) << ',' << r.root_index << ',' << format_number(r.value) << '\n';
    }
    return exit_ok;
}

int cmd_green_grid(const RunConfig& c, std::ostream& out, std::ostream& err) {
    (void)err;
    if (!resolvent::has_closed_form(c.family)) {
        throw UsageError("invalid value for field 'family': no closed-form Green function for " + c.family.name());
    }
    const auto& g = *c.grid;
    const double energy = *c.energy;
    std::vector<double> xs(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        xs[i] = i + 1 == g.n ? g.x_max : g.x_min + (g.x_max - g.x_min) * static_cast<double>(i) / (g.n - 1.0);
    }
    // Evaluate everything first so a failure never leaves partial output.
    std::vector<double> values(g.n * g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t j = 0; j < g.n; ++j) {
            values[i * g.n + j] = resolvent::green(c.family, xs[i], xs[j], energy).value;
        }
    }
    if (c.format == "json") {
        json grid_x = json::array();
        for (const double x : xs) {
            grid_x.push_back(num(x));
        }
        json rows = json::array();
        for (std::size_t i = 0; i < g.n; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < g.n; ++j) {
                row.push_back(num(values[i * g.n + j]));
            }
            rows.push_back(row);
        }
        json doc = {{"command", "green-grid"},
                    {"family", family_json(c.family)},
                    {"energy", num(energy)},
                    {"convention", "G"},
                    {"x", grid_x},
                    {"values", rows}};
        out << doc.dump() << '\n';
        return exit_ok;
    }
    out << "x,xp,value\n";
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t j = 0; j < g.n; ++j) {
            out << format_number(xs[i]) << ',' << format_number(xs[j]) << ',' << format_number(values[i * g.n + j])
                << '\n';
        }
    }
    return exit_ok;
}

int cmd_table1(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto family = default_family(FamilyTag::half_ho_half_linear);
    const auto chi = spectrum::characteristic(family);
    const auto& reference = table1_reference();
    const auto result = spectrum::find_roots(chi, chi.default_window, c.step, reference.size());
    report_warnings(result.warnings, err);
    bool ok = result.roots.size() == reference.size();
    json rows = json::array();
    std::string csv = "index,computed,reference,abs_diff\n";
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double computed =
            i < result.roots.size() ? result.roots[i].value : std::numeric_limits<double>::quiet_NaN();
        const double diff = std::abs(computed - reference[i]);
        ok = ok && diff <= table1_tolerance;
        rows.push_back({{"index", i}, {"computed", num(computed)}, {"reference", num(reference[i])}, {"abs_diff", num(diff)}});
        csv += std::to_string(i) + ',' + format_number(computed) + ',' + format_number(reference[i]) + ',' +
               format_number(diff) + '\n';
    }
    if (c.format == "json") {
        json doc = {{"command", "table1"}, {"tolerance", table1_tolerance}, {"pass", ok}, {"rows", rows}};
        out << doc.dump(2) << '\n';
    } else {
        out << csv;
    }
    if (!ok) {
        err << "error: computed levels differ from the reference table by more than "
            << format_number(table1_tolerance) << '\n';
        return exit_mismatch;
    }
    return exit_ok;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::vector<VerifyRow> rows;
    for (const auto& family : verify_families(c)) {
        const bool delta = is_delta(family);
        const std::size_t n_points = delta ? 8000 : 4000;
        const double tol = delta ? 5e-3 : 2e-3;
        const std::size_t k = *c.count;
        const std::string name = family.name();

        const auto chi = spectrum::characteristic(family);
        const auto window = c.all_families ? chi.default_window : c.window.value_or(chi.default_window);
        const auto found = spectrum::find_roots(chi, window, c.step, k);
        report_warnings(found.warnings, err);
        if (found.roots.empty()) {
            throw NumericalError("verify: no closed-form roots for " + name + " in the scan window");
        }
        const double variable_max = found.roots.back().value + 1.0;
        const auto reference = oracle::reference_levels(family, k, n_points, variable_max);
        for (std::size_t i = 0; i < k; ++i) {
            const double cf =
                i < found.roots.size() ? found.roots[i].value : std::numeric_limits<double>::quiet_NaN();
            const double diff = std::abs(cf - reference[i]);
            rows.push_back({name, "level", i, cf, reference[i], diff, tol, diff <= tol});
        }

        if (!resolvent::has_closed_form(family)) {
            continue;
        }
        const double energy = c.all_families ? default_energy(family) : c.energy.value_or(default_energy(family));
        const double e_max = std::max(energy, variable_max * energy_unit(family));
        const auto grid = oracle::auto_grid(family, e_max, n_points);
        const auto op = oracle::discretize(family, grid, e_max);
        const std::size_t source = grid.nearest(-0.7);
        const double xp = grid.node(source);
        const auto column = oracle::resolvent_solve(op, energy, source);
        const double probes[] = {-1.5, -0.6, 0.0, 0.4, 1.2};
        std::vector<double> cf(std::size(probes)), fd(std::size(probes));
        double scale = 0.0;
        for (std::size_t j = 0; j < std::size(probes); ++j) {
            const std::size_t node = grid.nearest(probes[j]);
            cf[j] = resolvent::green(family, grid.node(node), xp, energy).value;
            fd[j] = column[node];
            scale = std::max(scale, std::abs(cf[j]));
        }
        for (std::size_t j = 0; j < cf.size(); ++j) {
            const double diff = std::abs(cf[j] - fd[j]) / scale;
            rows.push_back({name, "green", j, cf[j], fd[j], diff, tol, diff <= tol});
        }
    }

    bool ok = true;
    for (const auto& r : rows) {
        ok = ok && r.pass;
    }
    if (c.format == "json") {
        json items = json::array();
        for (const auto& r : rows) {
            items.push_back({{"family", r.family},
                             {"check", r.check},
                             {"index", r.index},
                             {"closed_form", num(r.closed_form)},
                             {"oracle", num(r.oracle)},
                             {"discrepancy", num(r.discrepancy)},
                             {"tolerance", num(r.tolerance)},
                             {"status", r.pass ? "PASS" : "FAIL"}});
        }
        json doc = {{"command", "verify"}, {"pass", ok}, {"rows", items}};
        out << doc.dump(2) << '\n';
    } else {
        out << "family,check,index,closed_form,oracle,discrepancy,tolerance,status\n";
        for (const auto& r : rows) {
            out << r.family << ',' << r.check << ',' << r.index << ',' << format_number(r.closed_form) << ','
                << format_number(r.oracle) << ',' << format_number(r.discrepancy) << ','
                << format_number(r.tolerance) << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
        }
    }
    if (!ok) {
        err << "error: closed-form and oracle results disagree beyond tolerance\n";
        return exit_mismatch;
    }
    return exit_ok;
}

} // namespace wellspec::cli
