#pragma once

// Closed-form Green functions G(x, x'; E) = <x|(H - E)^{-1}|x'> and the
// truncated Hermite series of the oscillator resolvent.
//
// Every closed form is built from ordered arguments x_lt = min(x, x'),
// x_gt = max(x, x'), so value(x, x') == value(x', x) bit for bit.

#include "wellspec/model.hpp"

namespace wellspec::resolvent {

enum class Convention {
    g,       // G, units 1/(energy length)
    g_tilde, // G~ = -(hbar^2/2m) G, jump of dG~/dx across x = x' is 1
};

struct GreenEval {
    double value = 0.0;
    Convention convention = Convention::g;
    double x_lt = 0.0;
    double x_gt = 0.0;
    double est_abs_error = 0.0;
};

GreenEval to_g_tilde(const GreenEval& g, const PhysicalScales& scales);
GreenEval to_g(const GreenEval& g, const PhysicalScales& scales);

/// Harmonic oscillator (uses hbar, mass, omega1).
/// Throws NearPoleError when eps is within 1e-9 of n + 1/2.
GreenEval green_ho(double x, double xp, double energy, const PhysicalScales& scales);

struct SeriesOptions {
    unsigned n_terms = 500;
    /// Add the remainder of the series computed from the Mehler generating
    /// function. Without it the diagonal converges only like n_terms^{-1/2}.
    bool tail_correction = false;
};

/// Eigenfunction expansion of green_ho truncated after n_terms (<= 2000).
GreenEval green_ho_series(double x, double xp, double energy, const PhysicalScales& scales,
                          const SeriesOptions& options = {});

/// Oscillator in a uniform field, V = m omega^2 x^2/2 + alpha^3 x.
GreenEval green_ho_stark(double x, double xp, double energy, const PhysicalScales& scales);

/// Symmetric linear well V = alpha^3 |x| (uses hbar, mass, alpha1).
/// Throws NearPoleError (parity set) when Ai(-rho) Ai'(-rho) is within 1e-10 of 0.
GreenEval green_linear(double x, double xp, double energy, const PhysicalScales& scales);

/// V = m omega^2 x^2/2 + alpha^3 |x|.
GreenEval green_ho_plus_abs(double x, double xp, double energy, const PhysicalScales& scales);

/// Base resolvent (HO or LINEAR_ABS) decorated by a delta(x - q) through the
/// Dyson equation. Throws NearPoleError when 1 + a G_base(q, q) is within
/// 1e-12 of 0, i.e. at a decorated bound state.
GreenEval green_decorated(double x, double xp, double energy, const PotentialFamily& family);

/// Whether green() has a closed form for the family.
bool has_closed_form(const PotentialFamily& family);

/// Dispatches to the closed form of the family (G convention).
GreenEval green(const PotentialFamily& family, double x, double xp, double energy);

/// psi_L psi_R' - psi_L' psi_R (d/dx) of the two decaying linear-well
/// solutions at x0, normalized so psi(0) = Ai(-rho). Independent of x0.
double linear_wronskian(double x0, double energy, const PhysicalScales& scales);

} // namespace wellspec::resolvent
