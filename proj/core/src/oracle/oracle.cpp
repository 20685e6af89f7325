#include "wellspec/oracle.hpp"

#include "wellspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wellspec::oracle {

namespace {

constexpr double wall_margin = 10.0;

// Smallest t >= 0 along `direction` with V(direction * t) >= target.
double wall_distance(const PotentialFamily& family, double direction, double target) {
    double hi = 1.0;
    while (potential_value(family, direction * hi) < target) {
        hi *= 2.0;
        if (hi > 1e8) {
            throw WallTooCloseError("auto_grid: potential never reaches the wall target");
        }
    }
    double lo = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (potential_value(family, direction * mid) >= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

} // namespace

GridSpec GridSpec::symmetric(double half_width, std::size_t n_points) { return {-half_width, half_width, n_points}; }

std::size_t GridSpec::nearest(double x) const {
    const double t = std::nearbyint((x - lower) / h() - 1.0);
    if (t <= 0.0) {
        return 0;
    }
    return std::min(static_cast<std::size_t>(t), n_points - 1);
}

TridiagonalOperator discretize(const PotentialFamily& family, const GridSpec& grid, std::optional<double> e_max) {
    family.validate();
    if (grid.n_points < 100) {
        throw ParameterError("discretize: n_points must be >= 100");
    }
    if (!(grid.lower < grid.upper) || !std::isfinite(grid.lower) || !std::isfinite(grid.upper)) {
        throw ParameterError("discretize: grid needs finite walls with lower < upper");
    }
    if (e_max) {
        const double need = *e_max + wall_margin;
        const double v_lo = potential_value(family, grid.lower);
        const double v_hi = potential_value(family, grid.upper);
        if (v_lo < need || v_hi < need) {
            std::ostringstream msg;
            msg << "discretize: V at the walls (" << v_lo << ", " << v_hi << ") is below E_max + 10 = " << need;
            throw WallTooCloseError(msg.str());
        }
    }
    const auto& s = family.scales;
    const double h = grid.h();
    const double kinetic = s.hbar * s.hbar / (2.0 * s.mass * h * h);
    TridiagonalOperator op;
    op.grid = grid;
    op.diag.resize(grid.n_points);
    op.offdiag.assign(grid.n_points - 1, -kinetic);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        op.diag[i] = 2.0 * kinetic + potential_value(family, grid.node(i));
    }
    if (family.tag == FamilyTag::delta_decorated) {
        op.diag[grid.nearest(*s.delta_position)] += *s.delta_strength / h;
    }
    return op;
}

std::size_t count_below(const TridiagonalOperator& op, double e) {
    const std::size_t n = op.diag.size();
    std::size_t count = 0;
    double d = 1.0;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    for (std::size_t i = 0; i < n; ++i) {
        const double b2 = i == 0 ? 0.0 : op.offdiag[i - 1] * op.offdiag[i - 1];
        d = (op.diag[i] - e) - (i == 0 ? 0.0 : b2 / d);
        if (d == 0.0) {
            d = -tiny;
        }
        if (d < 0.0) {
            ++count;
        }
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, std::size_t k) {
    if (k > 50) {
        throw ParameterError("lowest_eigenvalues: k must be <= 50");
    }
    const std::size_t n = op.diag.size();
    k = std::min(k, n);
    // Gershgorin bounds.
    double g_lo = std::numeric_limits<double>::infinity();
    double g_hi = -g_lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(op.offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(op.offdiag[i]) : 0.0);
        g_lo = std::min(g_lo, op.diag[i] - r);
        g_hi = std::max(g_hi, op.diag[i] + r);
    }
    std::vector<double> out;
    out.reserve(k);
    double floor = g_lo;
    for (std::size_t j = 0; j < k; ++j) {
        // Smallest e with count_below(e) > j.
        double lo = floor;
        double hi = g_hi;
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            if (count_below(op, mid) > j) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        const double value = 0.5 * (lo + hi);
        out.push_back(value);
        floor = lo;
    }
    return out;
}

std::vector<double> resolvent_solve(const TridiagonalOperator& op, double energy, std::size_t source_index) {
    const std::size_t n = op.diag.size();
    if (source_index >= n) {
        throw ParameterError("resolvent_solve: source index outside the grid");
    }
    if (count_below(op, energy - 1e-6) != count_below(op, energy + 1e-6)) {
        std::ostringstream msg;
        msg << "resolvent_solve: an eigenvalue lies within 1e-6 of E = " << energy;
        throw NearEigenvalueError(msg.str());
    }
    // Gaussian elimination with partial pivoting for a tridiagonal system
    // (the matrix A - E is indefinite). Rows keep a second superdiagonal.
    std::vector<double> dl(op.offdiag), d(n), du(op.offdiag), du2(n, 0.0);
    std::vector<double> b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = op.diag[i] - energy;
    }
    b[source_index] = 1.0 / op.grid.h();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            const double f = dl[i] / d[i];
            d[i + 1] -= f * du[i];
            b[i + 1] -= f * b[i];
            dl[i] = 0.0;
        } else {
            const double f = d[i] / dl[i];
            d[i] = dl[i];
            const double tmp = d[i + 1];
            d[i + 1] = du[i] - f * tmp;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -f * du[i + 1];
            }
            du[i] = tmp;
            std::swap(b[i], b[i + 1]);
            b[i + 1] -= f * b[i];
        }
    }
    if (d[n - 1] == 0.0) {
        throw NearEigenvalueError("resolvent_solve: singular system");
    }
    std::vector<double> x(n);
    x[n - 1] = b[n - 1] / d[n - 1];
    if (n > 1) {
        x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    }
    for (std::size_t i = n - 2; i-- > 0;) {
        x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    }
    return x;
}

GridSpec auto_grid(const PotentialFamily& family, double e_max, std::size_t n_points) {
    family.validate();
    const double target = 2.0 * std::max(e_max, 0.0) + wall_margin;
    GridSpec grid;
    grid.lower = -wall_distance(family, -1.0, target);
    grid.upper = wall_distance(family, 1.0, target);
    const double pad = 0.01 * (grid.upper - grid.lower);
    grid.lower -= pad;
    grid.upper += pad;
    grid.n_points = n_points;
    if (family.tag == FamilyTag::delta_decorated) {
        // Shift the grid by less than one step so that q falls on a node.
        const double q = *family.scales.delta_position;
        const double h = grid.h();
        const double offset = (q - grid.lower) / h;
        const double frac = offset - std::floor(offset);
        grid.lower -= (1.0 - frac) * h;
        grid.upper = grid.lower + h * static_cast<double>(n_points + 1);
    }
    return grid;
}

std::vector<double> reference_levels(const PotentialFamily& family, std::size_t k, std::size_t n_points,
                                     double variable_max) {
    const double unit = energy_unit(family);
    const double e_max = variable_max * unit;
    const auto grid = auto_grid(family, e_max, n_points);
    const auto op = discretize(family, grid, e_max);
    auto levels = lowest_eigenvalues(op, k);
    for (auto& v : levels) {
        v /= unit;
    }
    return levels;
}

} // namespace wellspec::oracle
