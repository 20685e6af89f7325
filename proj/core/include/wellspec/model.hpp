#pragma once

// Potential families, their physical scales and the dimensionless parameters
// the closed forms are written in.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wellspec {

enum class Parity { even, odd };

const char* to_string(Parity parity);

enum class FamilyTag {
    ho,
    ho_stark,
    ho_asym,
    linear_abs,
    linear_asym,
    half_ho_half_linear,
    ho_plus_abs,
    delta_decorated,
};

/// Upper-case tag name, e.g. "HO_STARK".
std::string_view tag_name(FamilyTag tag);
std::optional<FamilyTag> parse_tag(std::string_view name);
const std::vector<FamilyTag>& all_tags();

struct PhysicalScales {
    double hbar = 1.0;
    double mass = 1.0;
    std::optional<double> omega1;         // omega, or omega_1 for the left half
    std::optional<double> omega2;         // omega_2, right half
    std::optional<double> alpha1;         // alpha with alpha^3 the slope, or alpha_1
    std::optional<double> alpha2;         // alpha_2, right half
    std::optional<double> delta_strength; // a
    std::optional<double> delta_position; // q
};

struct PotentialFamily {
    FamilyTag tag = FamilyTag::ho;
    FamilyTag base = FamilyTag::ho; // DELTA_DECORATED only: HO or LINEAR_ABS
    PhysicalScales scales;

    /// Throws ParameterError naming the offending field.
    void validate() const;
    /// Short description such as "DELTA_DECORATED(LINEAR_ABS)".
    std::string name() const;
};

/// Whether the family's spectral variable is eps = E/(hbar omega) or the
/// Airy variable rho = (E/alpha^2)(2m/hbar^2)^{1/3}.
enum class SpectralVariable { eps, rho };

SpectralVariable spectral_variable(const PotentialFamily& family);

struct DimensionlessMap {
    std::optional<double> eps;
    std::optional<double> mu;
    std::optional<double> phi;
    std::optional<double> sigma;
    std::optional<double> rho;
    std::optional<double> zeta;
    std::optional<double> lam;
    std::optional<double> beta;
    std::optional<double> xi;
    std::optional<double> tau;
    std::optional<double> p;
    std::optional<double> eta;
    std::optional<double> zeta_q; // zeta * q, the delta position in Airy units
};

/// Parameters used by the family at energy E. Throws ParameterError when a
/// required scale is missing.
DimensionlessMap dimensionless(const PotentialFamily& family, double energy);

/// Energy per unit of the spectral variable: hbar omega_1, or
/// alpha_1^2 (hbar^2/2m)^{1/3} for Airy families.
double energy_unit(const PotentialFamily& family);

/// Smooth part of V(x); the delta term is not included.
double potential_value(const PotentialFamily& family, double x);

/// Figure conventions: hbar = m = omega = 1 for quadratic families,
/// hbar^2 = 2m and alpha = 1 for linear ones.
PotentialFamily default_family(FamilyTag tag, FamilyTag base = FamilyTag::ho);

/// Returns a copy with one parameter changed. Accepts the scale fields
/// (hbar, mass, omega1, omega2, alpha1, alpha2, delta_strength,
/// delta_position) and the dimensionless ones the family supports
/// (lambda, beta, xi, alpha3, mu_phi, tau, p, eta, zeta_q). Dimensionless
/// parameters are realized by adjusting one scale and keeping the others.
PotentialFamily with_parameter(const PotentialFamily& family, std::string_view name, double value);

/// Current value of any name accepted by with_parameter.
double parameter_value(const PotentialFamily& family, std::string_view name);

/// Dimensionless parameters that with_parameter accepts for this family.
std::vector<std::string> sweep_parameters(const PotentialFamily& family);

// JSON form: {"tag": "...", "base": "...", "scales": {"hbar": ..., ...}}.
// Missing scale fields fall back to default_family(tag, base).
std::string to_json(const PotentialFamily& family);
PotentialFamily family_from_json(std::string_view text);

} // namespace wellspec
