#pragma once

// Finite-difference reference solver: three-point Laplacian on a uniform grid
// with Dirichlet walls, Sturm-sequence bisection for the lowest eigenvalues
// and a direct tridiagonal solve for fixed-energy Green columns.

#include "wellspec/model.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace wellspec::oracle {

struct GridSpec {
    double lower = -10.0; // wall positions
    double upper = 10.0;
    std::size_t n_points = 4000; // interior nodes

    static GridSpec symmetric(double half_width, std::size_t n_points);

    double h() const { return (upper - lower) / static_cast<double>(n_points + 1); }
    double node(std::size_t i) const { return lower + static_cast<double>(i + 1) * h(); }
    /// Interior node closest to x.
    std::size_t nearest(double x) const;
};

struct TridiagonalOperator {
    std::vector<double> diag;
    std::vector<double> offdiag; // n - 1 entries
    GridSpec grid;
};

/// Discretizes -hbar^2/(2m) d^2/dx^2 + V. A delta a delta(x - q) becomes a/h on
/// the node nearest q. When e_max is given, throws WallTooCloseError unless
/// V at both walls is at least e_max + 10.
TridiagonalOperator discretize(const PotentialFamily& family, const GridSpec& grid,
                               std::optional<double> e_max = std::nullopt);

/// Number of eigenvalues strictly below e.
std::size_t count_below(const TridiagonalOperator& op, double e);

/// The k (<= 50) smallest eigenvalues, each to absolute tolerance 1e-10.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, std::size_t k);

/// Solves (A - E) g = e_source / h. Throws NearEigenvalueError when an
/// eigenvalue lies within 1e-6 of E.
std::vector<double> resolvent_solve(const TridiagonalOperator& op, double energy, std::size_t source_index);

/// Walls 1% beyond the points where V reaches 2 e_max + 10, so the e_max + 10
/// check holds with margin. For delta families the grid is shifted so that q is a node.
GridSpec auto_grid(const PotentialFamily& family, double e_max, std::size_t n_points);

/// Lowest k levels of the family in its spectral variable (eps or rho).
std::vector<double> reference_levels(const PotentialFamily& family, std::size_t k, std::size_t n_points,
                                     double variable_max);

} // namespace wellspec::oracle
