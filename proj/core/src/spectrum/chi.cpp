#include "wellspec/errors.hpp"
#include "wellspec/specfun.hpp"
#include "wellspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wellspec::spectrum {

namespace {

// Airy arguments stay inside |x| <= 25; the margin absorbs rounding in the products below.
constexpr double airy_limit = 25.0 - 1e-9;
constexpr double pcf_order_limit = 60.0;

double need(const std::optional<double>& v, const char* name) {
    if (!v) {
        throw ParameterError(std::string("characteristic function: map field '") + name + "' is not set");
    }
    return *v;
}

double mu_phi(const DimensionlessMap& map) { return need(map.mu, "mu") * need(map.phi, "phi"); }

} // namespace

double chi_ho(double eps) { return specfun::rgamma(0.5 - eps); }

double chi_ho_stark(double eps, const DimensionlessMap& map) {
    const double half = 0.5 * mu_phi(map);
    return specfun::rgamma(0.5 - (eps + half * half));
}

double levels_ho_stark(unsigned n, const DimensionlessMap& map) {
    const double half = 0.5 * mu_phi(map);
    return n + 0.5 - half * half;
}

double chi_asym_ho(double eps, double lam) {
    using specfun::rgamma;
    if (!(lam > 0.0)) {
        throw ParameterError("chi_asym_ho: lambda must be > 0");
    }
    return rgamma(0.25 - 0.5 * lam * eps) * rgamma(0.75 - 0.5 * eps) +
           std::sqrt(lam) * rgamma(0.25 - 0.5 * eps) * rgamma(0.75 - 0.5 * lam * eps);
}

ParityFactors chi_linear(double rho) {
    const auto a = specfun::airy(-rho);
    return {a.ai_prime.value, a.ai.value};
}

double chi_asym_linear(double rho, double beta) {
    if (!(beta > 0.0)) {
        throw ParameterError("chi_asym_linear: beta must be > 0");
    }
    const auto l = specfun::airy(-rho);
    const auto r = specfun::airy(-rho * beta * beta);
    return l.ai.value * r.ai_prime.value + beta * r.ai.value * l.ai_prime.value;
}

double asym_linear_residual(double rho, double beta) {
    const auto l = specfun::airy(-rho);
    const auto r = specfun::airy(-rho * beta * beta);
    // Sine of the angle between the Cauchy data (psi, psi') of the two one-sided solutions at 0.
    const double w = l.ai.value * r.ai_prime.value / beta + r.ai.value * l.ai_prime.value;
    const double nl = std::hypot(l.ai.value, l.ai_prime.value);
    const double nr = std::hypot(r.ai.value, r.ai_prime.value / beta);
    return nl > 0.0 && nr > 0.0 ? std::abs(w) / (nl * nr) : 0.0;
}

double chi_half_half(double eps, double xi) {
    if (!(xi > 0.0)) {
        throw ParameterError("chi_half_half: xi must be > 0");
    }
    const auto a = specfun::airy(-xi * xi * eps);
    return specfun::rgamma(0.75 - 0.5 * eps) * a.ai_prime.value -
           std::numbers::sqrt2 * xi * specfun::rgamma(0.25 - 0.5 * eps) * a.ai.value;
}

ParityFactors chi_ho_plus_abs(double eps, const DimensionlessMap& map) {
    const double z0 = mu_phi(map);
    const double nu = eps + 0.25 * z0 * z0 - 0.5;
    const double d0 = specfun::pcf_d(nu, z0).value;
    const double d1 = specfun::pcf_d(nu + 1.0, z0).value;
    return {z0 * d0 - 2.0 * d1, d0};
}

double chi_delta_ho(double eps, double tau, double p) {
    const double nu = eps - 0.5;
    return tau * specfun::pcf_d(nu, p).value * specfun::pcf_d(nu, -p).value + specfun::rgamma(0.5 - eps);
}

double chi_delta_linear(double rho, double eta, double zeta_q) {
    const double zq = std::abs(zeta_q);
    const auto a0 = specfun::airy(-rho);
    const auto aq = specfun::airy(zq - rho);
    const double ai = a0.ai.value;
    const double aip = a0.ai_prime.value;
    const double psi_left = std::numbers::pi * ((ai * a0.bi_prime.value + aip * a0.bi.value) * aq.ai.value -
                                                2.0 * ai * aip * aq.bi.value);
    return eta * psi_left * aq.ai.value - ai * aip;
}

double CharacteristicFunction::operator()(double v) const {
    double out = 1.0;
    for (const auto& f : factors) {
        out *= f.eval(v);
    }
    return out;
}

CharacteristicFunction characteristic(const PotentialFamily& family) {
    family.validate();
    CharacteristicFunction chi;
    chi.family = family;
    chi.variable = spectral_variable(family);
    const DimensionlessMap map = dimensionless(family, 0.0);
    const double inf = std::numeric_limits<double>::infinity();
    chi.domain = {-inf, inf};
    double lower = 1e-6;
    const double upper = 12.0;

    switch (family.tag) {
    case FamilyTag::ho:
        chi.factors.push_back({[](double e) { return chi_ho(e); }, std::nullopt});
        break;
    case FamilyTag::ho_stark: {
        chi.factors.push_back({[map](double e) { return chi_ho_stark(e, map); }, std::nullopt});
        const double half = 0.5 * mu_phi(map);
        lower = 1e-6 - half * half;
        break;
    }
    case FamilyTag::ho_asym: {
        const double lam = *map.lam;
        chi.factors.push_back({[lam](double e) { return chi_asym_ho(e, lam); }, std::nullopt});
        break;
    }
    case FamilyTag::linear_abs:
        chi.factors.push_back({[](double r) { return chi_linear(r).even; }, Parity::even});
        chi.factors.push_back({[](double r) { return chi_linear(r).odd; }, Parity::odd});
        chi.domain = {-airy_limit, airy_limit};
        break;
    case FamilyTag::linear_asym: {
        const double beta = *map.beta;
        chi.factors.push_back({[beta](double r) { return chi_asym_linear(r, beta); }, std::nullopt});
        const double reach = airy_limit / std::max(1.0, beta * beta);
        chi.domain = {-reach, reach};
        chi.validate = [beta](double r) { return asym_linear_residual(r, beta) <= 1e-6; };
        break;
    }
    case FamilyTag::half_ho_half_linear: {
        const double xi = *map.xi;
        chi.factors.push_back({[xi](double e) { return chi_half_half(e, xi); }, std::nullopt});
        chi.domain = {-airy_limit / (xi * xi), airy_limit / (xi * xi)};
        break;
    }
    case FamilyTag::ho_plus_abs: {
        chi.factors.push_back({[map](double e) { return chi_ho_plus_abs(e, map).even; }, Parity::even});
        chi.factors.push_back({[map](double e) {
                                   const double z0 = mu_phi(map);
                                   return specfun::pcf_d(e + 0.25 * z0 * z0 - 0.5, z0).value;
                               },
                               Parity::odd});
        const double shift = 0.25 * mu_phi(map) * mu_phi(map);
        chi.domain = {-pcf_order_limit + 0.5 - shift, pcf_order_limit - 1.5 - shift};
        break;
    }
    case FamilyTag::delta_decorated: {
        const auto& s = family.scales;
        const double a = *s.delta_strength;
        // An attractive delta alone binds at -m a^2 / (2 hbar^2); the confining part only raises levels.
        const double floor_energy = a < 0.0 ? -s.mass * a * a / (2.0 * s.hbar * s.hbar) : 0.0;
        lower = floor_energy / energy_unit(family) - 1.0;
        if (family.base == FamilyTag::ho) {
            const double tau = *map.tau;
            const double p = std::abs(*map.p);
            chi.factors.push_back({[tau, p](double e) { return chi_delta_ho(e, tau, p); }, std::nullopt});
            chi.domain = {-pcf_order_limit + 0.5, pcf_order_limit + 0.5};
        } else {
            const double eta = *map.eta;
            const double zq = std::abs(*map.zeta_q);
            chi.factors.push_back({[eta, zq](double r) { return chi_delta_linear(r, eta, zq); }, std::nullopt});
            chi.domain = {-airy_limit + zq, airy_limit - zq};
        }
        break;
    }
    }
    chi.default_window = {std::max(lower, chi.domain.first), std::min(upper, chi.domain.second)};
    return chi;
}

} // namespace wellspec::spectrum
