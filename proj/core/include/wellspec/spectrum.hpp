#pragma once

// Pole-free characteristic functions whose zeros are the bound states, the
// bracketing root finder and parameter sweeps.

#include "wellspec/model.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wellspec::spectrum {

struct ParityFactors {
    double even = 0.0;
    double odd = 0.0;
};

/// 1/Gamma(1/2 - eps); zero exactly at eps = n + 1/2.
double chi_ho(double eps);

/// 1/Gamma(1/2 - sigma), sigma = eps + (mu phi/2)^2. Uses map.mu and map.phi.
double chi_ho_stark(double eps, const DimensionlessMap& map);

/// n + 1/2 - (mu phi/2)^2.
double levels_ho_stark(unsigned n, const DimensionlessMap& map);

/// Matching condition of the oscillator with frequencies omega_1 (x < 0) and
/// omega_2 = omega_1 / lam (x > 0), in eps = E/(hbar omega_1).
double chi_asym_ho(double eps, double lam);

/// even: Ai'(-rho), odd: Ai(-rho).
ParityFactors chi_linear(double rho);

/// Ai(-rho) Ai'(-rho beta^2) + beta Ai(-rho beta^2) Ai'(-rho).
double chi_asym_linear(double rho, double beta);

/// Normalized Wronskian |W| / (|(psi_L, psi_L')| |(psi_R, psi_R')|) of the two
/// one-sided solutions at 0: the sine of the angle between their Cauchy data.
/// Small exactly at genuine eigenvalues.
double asym_linear_residual(double rho, double beta);

/// rgamma(3/4 - eps/2) Ai'(-xi^2 eps) - sqrt(2) xi rgamma(1/4 - eps/2) Ai(-xi^2 eps).
double chi_half_half(double eps, double xi);

/// odd: D_{sigma-1/2}(mu phi); even: mu phi D_{sigma-1/2}(mu phi) - 2 D_{sigma+1/2}(mu phi).
ParityFactors chi_ho_plus_abs(double eps, const DimensionlessMap& map);

/// tau D_{eps-1/2}(p) D_{eps-1/2}(-p) + 1/Gamma(1/2 - eps).
double chi_delta_ho(double eps, double tau, double p);

/// eta psi_L(q) Ai(zeta q - rho) - Ai(-rho) Ai'(-rho), where psi_L is the
/// linear-well solution decaying at -infinity, continued past the origin.
double chi_delta_linear(double rho, double eta, double zeta_q);

struct Factor {
    std::function<double(double)> eval;
    std::optional<Parity> parity;
};

struct CharacteristicFunction {
    PotentialFamily family;
    SpectralVariable variable = SpectralVariable::eps;
    /// Roots of each factor are found separately and merged.
    std::vector<Factor> factors;
    /// Range of the spectral variable on which every factor is defined.
    std::pair<double, double> domain;
    std::pair<double, double> default_window;
    /// Optional acceptance test applied to each refined root.
    std::function<bool(double)> validate;

    /// Product of the factors.
    double operator()(double v) const;
};

CharacteristicFunction characteristic(const PotentialFamily& family);

struct Root {
    std::size_t index = 0;
    double value = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    /// |chi(value)| / max(|chi(lo)|, |chi(hi)|) over the scan bracket.
    double residual = 0.0;
    std::optional<Parity> parity;
    std::optional<double> oracle_value;
};

struct SpectrumResult {
    std::vector<Root> roots;
    std::pair<double, double> scan_window;
    double scan_step = 0.0;
    std::vector<std::string> warnings;
};

/// Scans the window (clamped to the function's domain) at the given step and
/// refines every sign change by bisection. Roots where chi touches zero
/// without changing sign are not found. When max_roots is set the scan of each
/// factor stops after max_roots accepted roots and the lowest max_roots are kept.
SpectrumResult find_roots(const CharacteristicFunction& chi, std::pair<double, double> window, double step,
                          std::optional<std::size_t> max_roots = std::nullopt);

/// Records oracle levels (same variable) next to the roots and warns about
/// oracle levels inside the window with no matching root.
void attach_oracle(SpectrumResult& result, const std::vector<double>& oracle_levels, double tolerance);

struct SweepOptions {
    std::optional<std::pair<double, double>> window;
    double step = 0.005;
    std::size_t max_roots = 6;
    unsigned threads = 0; // 0: hardware concurrency
};

struct SweepRow {
    double param_value = 0.0;
    std::size_t root_index = 0;
    double value = 0.0;
};

struct SweepResult {
    std::string param;
    std::vector<double> param_values;
    std::vector<SpectrumResult> spectra;
    /// Ordered by (param_value, root_index); root_index follows curve continuity.
    std::vector<SweepRow> rows;
    /// Indices into param_values where the root count changed or matching was ambiguous.
    std::vector<std::size_t> breaks;
};

/// Parameter values from, from + step, ... up to `to` (inclusive within 1e-9 step).
std::vector<double> sweep_grid(double from, double to, double step);

SweepResult sweep(const PotentialFamily& family, std::string_view param, double from, double to, double step,
                  const SweepOptions& options = {});

} // namespace wellspec::spectrum
