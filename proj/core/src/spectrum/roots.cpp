#include "wellspec/errors.hpp"
#include "wellspec/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace wellspec::spectrum {

namespace {

constexpr double bracket_tolerance = 1e-12;

struct FactorRoot {
    double value;
    double lo;
    double hi;
    double residual;
    bool accepted = true;
};

double checked(const std::function<double(double)>& f, double v) {
    const double out = f(v);
    if (!std::isfinite(out)) {
        std::ostringstream msg;
        msg << "characteristic function is not finite at " << v;
        throw NumericalError(msg.str());
    }
    return out;
}

FactorRoot bisect(const std::function<double(double)>& f, double a, double fa, double b, double fb) {
    const double scale = std::max(std::abs(fa), std::abs(fb));
    double lo = a, hi = b, flo = fa;
    for (;;) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double fm = checked(f, mid);
        if (fm == 0.0) {
            return {mid, mid, mid, 0.0};
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    if (hi - lo > bracket_tolerance) {
        throw ConvergenceError("bisection stalled above the bracket tolerance");
    }
    const double root = 0.5 * (lo + hi);
    return {root, lo, hi, std::abs(checked(f, root)) / scale};
}

// Scans upward and stops once `limit` roots pass `accept`; rejected roots are
// kept with accepted = false.
std::vector<FactorRoot> scan_factor(const std::function<double(double)>& f, double lo, double hi, double step,
                                    const std::function<bool(double)>& accept, std::optional<std::size_t> limit) {
    std::vector<FactorRoot> out;
    std::size_t accepted = 0;
    auto record = [&](FactorRoot r) {
        r.accepted = !accept || accept(r.value);
        accepted += r.accepted ? 1 : 0;
        out.push_back(r);
        return limit && accepted >= *limit;
    };
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-9));
    auto sample = [&](std::size_t i) { return i >= n ? hi : lo + static_cast<double>(i) * step; };
    double x_prev = sample(0);
    double f_prev = checked(f, x_prev);
    if (f_prev == 0.0 && record({x_prev, x_prev, x_prev, 0.0})) {
        return out;
    }
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = sample(i);
        const double fx = checked(f, x);
        if (fx == 0.0) {
            if (record({x, x, x, 0.0})) {
                break;
            }
        } else if (f_prev != 0.0 && ((fx < 0.0) != (f_prev < 0.0))) {
            if (record(bisect(f, x_prev, f_prev, x, fx))) {
                break;
            }
        }
        x_prev = x;
        f_prev = fx;
    }
    return out;
}

} // namespace

SpectrumResult find_roots(const CharacteristicFunction& chi, std::pair<double, double> window, double step,
                          std::optional<std::size_t> max_roots) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ParameterError("find_roots: step must be finite and > 0");
    }
    if (!std::isfinite(window.first) || !std::isfinite(window.second) || !(window.first < window.second)) {
        throw ParameterError("find_roots: window must be finite with lo < hi");
    }
    SpectrumResult result;
    result.scan_step = step;
    const double lo = std::max(window.first, chi.domain.first);
    const double hi = std::min(window.second, chi.domain.second);
    result.scan_window = {lo, hi};
    if (lo != window.first || hi != window.second) {
        std::ostringstream msg;
        msg << "window clamped to the validity domain [" << lo << ", " << hi << "]";
        result.warnings.push_back(msg.str());
    }
    if (!(lo < hi) || (max_roots && *max_roots == 0)) {
        return result;
    }
    for (const auto& factor : chi.factors) {
        for (const auto& r : scan_factor(factor.eval, lo, hi, step, chi.validate, max_roots)) {
            if (!r.accepted) {
                std::ostringstream msg;
                msg << "rejected sign change at " << r.value << " (failed root validation)";
                result.warnings.push_back(msg.str());
                continue;
            }
            Root root;
            root.value = r.value;
            root.bracket_lo = r.lo;
            root.bracket_hi = r.hi;
            root.residual = r.residual;
            root.parity = factor.parity;
            result.roots.push_back(root);
        }
    }
    std::sort(result.roots.begin(), result.roots.end(),
              [](const Root& a, const Root& b) { return a.value < b.value; });
    if (max_roots && result.roots.size() > *max_roots) {
        result.roots.resize(*max_roots);
    }
    for (std::size_t i = 0; i < result.roots.size(); ++i) {
        result.roots[i].index = i;
    }
    return result;
}

void attach_oracle(SpectrumResult& result, const std::vector<double>& oracle_levels, double tolerance) {
    std::vector<bool> used(oracle_levels.size(), false);
    for (auto& root : result.roots) {
        std::size_t best = oracle_levels.size();
        for (std::size_t j = 0; j < oracle_levels.size(); ++j) {
            if (!used[j] && (best == oracle_levels.size() ||
                             std::abs(oracle_levels[j] - root.value) < std::abs(oracle_levels[best] - root.value))) {
                best = j;
            }
        }
        if (best < oracle_levels.size()) {
            used[best] = true;
            root.oracle_value = oracle_levels[best];
        }
    }
    const double top = result.roots.empty() ? result.scan_window.second : result.roots.back().value;
    for (std::size_t j = 0; j < oracle_levels.size(); ++j) {
        const double v = oracle_levels[j];
        const bool inside = v > result.scan_window.first && v < top;
        if (!used[j] && inside) {
            std::ostringstream msg;
            msg << "oracle level " << v << " has no matching root (suspected missed root)";
            result.warnings.push_back(msg.str());
        } else if (used[j]) {
            for (const auto& root : result.roots) {
                if (root.oracle_value && *root.oracle_value == v && std::abs(v - root.value) > tolerance) {
                    std::ostringstream msg;
                    msg << "root " << root.value << " differs from oracle level " << v << " by more than "
                        << tolerance;
                    result.warnings.push_back(msg.str());
                }
            }
        }
    }
}

std::vector<double> sweep_grid(double from, double to, double step) {
    if (!std::isfinite(from) || !std::isfinite(to) || !std::isfinite(step) || !(step > 0.0) || to < from) {
        throw ParameterError("sweep: range must be finite with from <= to and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = from + static_cast<double>(i) * step;
    }
    return out;
}

SweepResult sweep(const PotentialFamily& family, std::string_view param, double from, double to, double step,
                  const SweepOptions& options) {
    const auto allowed = sweep_parameters(family);
    if (std::find(allowed.begin(), allowed.end(), param) == allowed.end()) {
        throw ParameterError("sweep: parameter '" + std::string(param) + "' is not supported by " +
                             family.name());
    }
    SweepResult out;
    out.param = std::string(param);
    out.param_values = sweep_grid(from, to, step);
    const std::size_t n = out.param_values.size();
    out.spectra.resize(n);
    std::vector<std::exception_ptr> errors(n);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                const auto f = with_parameter(family, param, out.param_values[i]);
                const auto chi = characteristic(f);
                out.spectra[i] = find_roots(chi, options.window.value_or(chi.default_window), options.step,
                                            options.max_roots);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    // Curve continuity: with equal counts curve k keeps root k, provided root k
    // is also the nearest root to the previous value; otherwise flag a break.
    for (std::size_t i = 0; i < n; ++i) {
        const auto& roots = out.spectra[i].roots;
        if (i > 0) {
            const auto& prev = out.spectra[i - 1].roots;
            bool broken = prev.size() != roots.size();
            for (std::size_t k = 0; !broken && k < roots.size(); ++k) {
                for (std::size_t j = 0; j < roots.size(); ++j) {
                    if (j != k && std::abs(roots[j].value - prev[k].value) < std::abs(roots[k].value - prev[k].value)) {
                        broken = true;
                        break;
                    }
                }
            }
            if (broken) {
                out.breaks.push_back(i);
            }
        }
        for (std::size_t k = 0; k < roots.size(); ++k) {
            out.rows.push_back({out.param_values[i], k, roots[k].value});
        }
    }
    return out;
}

} // namespace wellspec::spectrum
