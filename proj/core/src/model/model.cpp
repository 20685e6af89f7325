#include "wellspec/model.hpp"

#include "wellspec/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace wellspec {

namespace {

constexpr std::array<std::pair<FamilyTag, std::string_view>, 8> tag_names{{
    {FamilyTag::ho, "HO"},
    {FamilyTag::ho_stark, "HO_STARK"},
    {FamilyTag::ho_asym, "HO_ASYM"},
    {FamilyTag::linear_abs, "LINEAR_ABS"},
    {FamilyTag::linear_asym, "LINEAR_ASYM"},
    {FamilyTag::half_ho_half_linear, "HALF_HO_HALF_LINEAR"},
    {FamilyTag::ho_plus_abs, "HO_PLUS_ABS"},
    {FamilyTag::delta_decorated, "DELTA_DECORATED"},
}};

double require(const std::optional<double>& field, const char* name, const PotentialFamily& family) {
    if (!field) {
        throw ParameterError(family.name() + ": missing scale '" + name + "'");
    }
    return *field;
}

void require_positive(const std::optional<double>& field, const char* name, const PotentialFamily& family) {
    const double v = require(field, name, family);
    if (!(std::isfinite(v) && v > 0.0)) {
        throw ParameterError(family.name() + ": scale '" + name + "' must be finite and > 0");
    }
}

void require_nonnegative(const std::optional<double>& field, const char* name, const PotentialFamily& family) {
    const double v = require(field, name, family);
    if (!(std::isfinite(v) && v >= 0.0)) {
        throw ParameterError(family.name() + ": scale '" + name + "' must be finite and >= 0");
    }
}

void require_finite(const std::optional<double>& field, const char* name, const PotentialFamily& family) {
    const double v = require(field, name, family);
    if (!std::isfinite(v)) {
        throw ParameterError(family.name() + ": scale '" + name + "' must be finite");
    }
}

// The family whose smooth potential is used (the base for decorated wells).
FamilyTag smooth_tag(const PotentialFamily& family) {
    return family.tag == FamilyTag::delta_decorated ? family.base : family.tag;
}

double mu_of(const PhysicalScales& s) { return std::sqrt(2.0 * s.mass * *s.omega1 / s.hbar); }

// (2m/hbar^2)^{1/3}
double airy_scale(const PhysicalScales& s) { return std::cbrt(2.0 * s.mass / (s.hbar * s.hbar)); }

double phi_of(const PhysicalScales& s) {
    const double a = *s.alpha1;
    return a * a * a / (s.mass * *s.omega1 * *s.omega1);
}

[[noreturn]] void unknown_parameter(const PotentialFamily& family, std::string_view name) {
    throw ParameterError(family.name() + ": unknown or unsupported parameter '" + std::string(name) + "'");
}

} // namespace

const char* to_string(Parity parity) { return parity == Parity::even ? "even" : "odd"; }

std::string_view tag_name(FamilyTag tag) {
    for (const auto& [t, name] : tag_names) {
        if (t == tag) {
            return name;
        }
    }
    return "?";
}

std::optional<FamilyTag> parse_tag(std::string_view name) {
    for (const auto& [t, n] : tag_names) {
        if (n == name) {
            return t;
        }
    }
    return std::nullopt;
}

const std::vector<FamilyTag>& all_tags() {
    static const std::vector<FamilyTag> tags = [] {
        std::vector<FamilyTag> out;
        for (const auto& entry : tag_names) {
            out.push_back(entry.first);
        }
        return out;
    }();
    return tags;
}

std::string PotentialFamily::name() const {
    std::string out(tag_name(tag));
    if (tag == FamilyTag::delta_decorated) {
        out += "(" + std::string(tag_name(base)) + ")";
    }
    return out;
}

void PotentialFamily::validate() const {
    if (!(std::isfinite(scales.hbar) && scales.hbar > 0.0)) {
        throw ParameterError(name() + ": scale 'hbar' must be finite and > 0");
    }
    if (!(std::isfinite(scales.mass) && scales.mass > 0.0)) {
        throw ParameterError(name() + ": scale 'mass' must be finite and > 0");
    }
    if (tag == FamilyTag::delta_decorated && base != FamilyTag::ho && base != FamilyTag::linear_abs) {
        throw ParameterError(name() + ": field 'base' must be HO or LINEAR_ABS");
    }
    switch (smooth_tag(*this)) {
    case FamilyTag::ho:
        require_positive(scales.omega1, "omega1", *this);
        break;
    case FamilyTag::ho_stark:
        require_positive(scales.omega1, "omega1", *this);
        require_nonnegative(scales.alpha1, "alpha1", *this);
        break;
    case FamilyTag::ho_asym:
        require_positive(scales.omega1, "omega1", *this);
        require_positive(scales.omega2, "omega2", *this);
        break;
    case FamilyTag::linear_abs:
        require_positive(scales.alpha1, "alpha1", *this);
        break;
    case FamilyTag::linear_asym:
        require_positive(scales.alpha1, "alpha1", *this);
        require_positive(scales.alpha2, "alpha2", *this);
        break;
    case FamilyTag::half_ho_half_linear:
        require_positive(scales.omega1, "omega1", *this);
        require_positive(scales.alpha1, "alpha1", *this);
        break;
    case FamilyTag::ho_plus_abs:
        require_positive(scales.omega1, "omega1", *this);
        require_nonnegative(scales.alpha1, "alpha1", *this);
        break;
    case FamilyTag::delta_decorated:
        break;
    }
    if (tag == FamilyTag::delta_decorated) {
        require_finite(scales.delta_strength, "delta_strength", *this);
        require_finite(scales.delta_position, "delta_position", *this);
    }
}

SpectralVariable spectral_variable(const PotentialFamily& family) {
    switch (smooth_tag(family)) {
    case FamilyTag::linear_abs:
    case FamilyTag::linear_asym:
        return SpectralVariable::rho;
    default:
        return SpectralVariable::eps;
    }
}

double energy_unit(const PotentialFamily& family) {
    family.validate();
    const auto& s = family.scales;
    if (spectral_variable(family) == SpectralVariable::rho) {
        return *s.alpha1 * *s.alpha1 / airy_scale(s);
    }
    return s.hbar * *s.omega1;
}

DimensionlessMap dimensionless(const PotentialFamily& family, double energy) {
    family.validate();
    if (!std::isfinite(energy)) {
        throw ParameterError(family.name() + ": energy must be finite");
    }
    const auto& s = family.scales;
    DimensionlessMap d;
    const FamilyTag tag = smooth_tag(family);
    const bool quadratic = tag == FamilyTag::ho || tag == FamilyTag::ho_stark || tag == FamilyTag::ho_asym ||
                           tag == FamilyTag::half_ho_half_linear || tag == FamilyTag::ho_plus_abs;
    if (quadratic) {
        d.eps = energy / (s.hbar * *s.omega1);
        d.mu = mu_of(s);
    }
    if (tag == FamilyTag::ho_stark || tag == FamilyTag::ho_plus_abs) {
        d.phi = phi_of(s);
        const double half = 0.5 * *d.mu * *d.phi;
        d.sigma = *d.eps + half * half;
    }
    if (tag == FamilyTag::ho_asym) {
        d.lam = *s.omega1 / *s.omega2;
    }
    if (tag == FamilyTag::linear_abs || tag == FamilyTag::linear_asym || tag == FamilyTag::half_ho_half_linear) {
        const double a = *s.alpha1;
        d.zeta = a * airy_scale(s);
        d.rho = energy / (a * a) * airy_scale(s);
    }
    if (tag == FamilyTag::linear_asym) {
        d.beta = *s.alpha1 / *s.alpha2;
    }
    if (tag == FamilyTag::half_ho_half_linear) {
        d.xi = std::pow(2.0 * s.mass * s.hbar * std::pow(*s.omega1, 3), 1.0 / 6.0) / *s.alpha1;
    }
    if (family.tag == FamilyTag::delta_decorated) {
        const double a = *s.delta_strength;
        const double q = *s.delta_position;
        if (family.base == FamilyTag::ho) {
            d.tau = a * std::sqrt(s.mass / (std::numbers::pi * *s.omega1 * s.hbar * s.hbar * s.hbar));
            d.p = *d.mu * q;
        } else {
            const double k = airy_scale(s);
            d.eta = a / (2.0 * *s.alpha1) * k * k;
            d.zeta_q = *d.zeta * q;
        }
    }
    return d;
}

double potential_value(const PotentialFamily& family, double x) {
    family.validate();
    const auto& s = family.scales;
    const double m = s.mass;
    auto cube = [](double v) { return v * v * v; };
    switch (smooth_tag(family)) {
    case FamilyTag::ho:
        return 0.5 * m * *s.omega1 * *s.omega1 * x * x;
    case FamilyTag::ho_stark:
        return 0.5 * m * *s.omega1 * *s.omega1 * x * x + cube(*s.alpha1) * x;
    case FamilyTag::ho_asym: {
        const double w = x < 0.0 ? *s.omega1 : *s.omega2;
        return 0.5 * m * w * w * x * x;
    }
    case FamilyTag::linear_abs:
        return cube(*s.alpha1) * std::abs(x);
    case FamilyTag::linear_asym:
        return x < 0.0 ? -cube(*s.alpha1) * x : cube(*s.alpha2) * x;
    case FamilyTag::half_ho_half_linear:
        return x < 0.0 ? 0.5 * m * *s.omega1 * *s.omega1 * x * x : cube(*s.alpha1) * x;
    case FamilyTag::ho_plus_abs:
        return 0.5 * m * *s.omega1 * *s.omega1 * x * x + cube(*s.alpha1) * std::abs(x);
    case FamilyTag::delta_decorated:
        break;
    }
    return 0.0;
}

PotentialFamily default_family(FamilyTag tag, FamilyTag base) {
    PotentialFamily f;
    f.tag = tag;
    f.base = tag == FamilyTag::delta_decorated ? base : FamilyTag::ho;
    auto& s = f.scales;
    const FamilyTag smooth = smooth_tag(f);
    const bool linear = smooth == FamilyTag::linear_abs || smooth == FamilyTag::linear_asym ||
                        smooth == FamilyTag::half_ho_half_linear;
    s.hbar = 1.0;
    s.mass = linear ? 0.5 : 1.0;
    switch (smooth) {
    case FamilyTag::ho:
        s.omega1 = 1.0;
        break;
    case FamilyTag::ho_stark:
        s.omega1 = 1.0;
        s.alpha1 = std::cbrt(1.3);
        break;
    case FamilyTag::ho_asym:
        s.omega1 = 1.0;
        s.omega2 = 2.0;
        break;
    case FamilyTag::linear_abs:
        s.alpha1 = 1.0;
        break;
    case FamilyTag::linear_asym:
        s.alpha1 = 1.0;
        s.alpha2 = 2.0;
        break;
    case FamilyTag::half_ho_half_linear:
        s.omega1 = 1.0;
        s.alpha1 = 1.0 / std::numbers::sqrt2; // xi = sqrt(2)
        break;
    case FamilyTag::ho_plus_abs:
        s.omega1 = 1.0;
        s.alpha1 = 1.0;
        break;
    case FamilyTag::delta_decorated:
        break;
    }
    if (tag == FamilyTag::delta_decorated) {
        if (f.base == FamilyTag::ho) {
            f = with_parameter(with_parameter(f, "tau", -1.0), "p", 0.5);
        } else {
            f = with_parameter(with_parameter(f, "eta", 1.0), "zeta_q", 0.5);
        }
    }
    return f;
}

PotentialFamily with_parameter(const PotentialFamily& family, std::string_view name, double value) {
    if (!std::isfinite(value)) {
        throw ParameterError(family.name() + ": parameter '" + std::string(name) + "' must be finite");
    }
    PotentialFamily f = family;
    auto& s = f.scales;
    if (name == "hbar") {
        s.hbar = value;
    } else if (name == "mass") {
        s.mass = value;
    } else if (name == "omega1") {
        s.omega1 = value;
    } else if (name == "omega2") {
        s.omega2 = value;
    } else if (name == "alpha1") {
        s.alpha1 = value;
    } else if (name == "alpha2") {
        s.alpha2 = value;
    } else if (name == "delta_strength") {
        s.delta_strength = value;
    } else if (name == "delta_position") {
        s.delta_position = value;
    } else {
        const FamilyTag smooth = smooth_tag(family);
        const bool decorated = family.tag == FamilyTag::delta_decorated;
        if (name == "lambda" && smooth == FamilyTag::ho_asym) {
            s.omega2 = require(s.omega1, "omega1", f) / value;
        } else if (name == "beta" && smooth == FamilyTag::linear_asym) {
            s.alpha2 = require(s.alpha1, "alpha1", f) / value;
        } else if (name == "xi" && smooth == FamilyTag::half_ho_half_linear) {
            const double w = require(s.omega1, "omega1", f);
            s.alpha1 = std::pow(2.0 * s.mass * s.hbar * w * w * w, 1.0 / 6.0) / value;
        } else if (name == "alpha3" && (smooth == FamilyTag::ho_stark || smooth == FamilyTag::ho_plus_abs)) {
            s.alpha1 = std::cbrt(value);
        } else if (name == "mu_phi" && (smooth == FamilyTag::ho_stark || smooth == FamilyTag::ho_plus_abs)) {
            const double w = require(s.omega1, "omega1", f);
            const double phi = value / mu_of(s);
            s.alpha1 = std::cbrt(phi * s.mass * w * w);
        } else if (name == "tau" && decorated && family.base == FamilyTag::ho) {
            const double w = require(s.omega1, "omega1", f);
            s.delta_strength = value / std::sqrt(s.mass / (std::numbers::pi * w * s.hbar * s.hbar * s.hbar));
        } else if (name == "p" && decorated && family.base == FamilyTag::ho) {
            require(s.omega1, "omega1", f);
            s.delta_position = value / mu_of(s);
        } else if (name == "eta" && decorated && family.base == FamilyTag::linear_abs) {
            const double k = airy_scale(s);
            s.delta_strength = 2.0 * require(s.alpha1, "alpha1", f) * value / (k * k);
        } else if (name == "zeta_q" && decorated && family.base == FamilyTag::linear_abs) {
            s.delta_position = value / (require(s.alpha1, "alpha1", f) * airy_scale(s));
        } else {
            unknown_parameter(family, name);
        }
    }
    return f;
}

double parameter_value(const PotentialFamily& family, std::string_view name) {
    const auto& s = family.scales;
    auto get = [&](const std::optional<double>& v, const char* field) { return require(v, field, family); };
    if (name == "hbar") {
        return s.hbar;
    }
    if (name == "mass") {
        return s.mass;
    }
    if (name == "omega1") {
        return get(s.omega1, "omega1");
    }
    if (name == "omega2") {
        return get(s.omega2, "omega2");
    }
    if (name == "alpha1") {
        return get(s.alpha1, "alpha1");
    }
    if (name == "alpha2") {
        return get(s.alpha2, "alpha2");
    }
    if (name == "delta_strength") {
        return get(s.delta_strength, "delta_strength");
    }
    if (name == "delta_position") {
        return get(s.delta_position, "delta_position");
    }
    if (name == "alpha3") {
        const double a = get(s.alpha1, "alpha1");
        return a * a * a;
    }
    const auto d = dimensionless(family, 0.0);
    const std::optional<double>* field = nullptr;
    std::optional<double> mu_phi;
    if (name == "lambda") {
        field = &d.lam;
    } else if (name == "beta") {
        field = &d.beta;
    } else if (name == "xi") {
        field = &d.xi;
    } else if (name == "tau") {
        field = &d.tau;
    } else if (name == "p") {
        field = &d.p;
    } else if (name == "eta") {
        field = &d.eta;
    } else if (name == "zeta_q") {
        field = &d.zeta_q;
    } else if (name == "mu_phi") {
        if (d.mu && d.phi) {
            mu_phi = *d.mu * *d.phi;
        }
        field = &mu_phi;
    }
    if (field == nullptr || !*field) {
        unknown_parameter(family, name);
    }
    return **field;
}

std::vector<std::string> sweep_parameters(const PotentialFamily& family) {
    switch (smooth_tag(family)) {
    case FamilyTag::ho_stark:
    case FamilyTag::ho_plus_abs:
        return {"mu_phi", "alpha3"};
    case FamilyTag::ho_asym:
        return {"lambda"};
    case FamilyTag::linear_asym:
        return {"beta"};
    case FamilyTag::half_ho_half_linear:
        return {"xi"};
    case FamilyTag::ho:
        return family.tag == FamilyTag::delta_decorated ? std::vector<std::string>{"tau", "p"}
                                                        : std::vector<std::string>{};
    case FamilyTag::linear_abs:
        return family.tag == FamilyTag::delta_decorated ? std::vector<std::string>{"eta", "zeta_q"}
                                                        : std::vector<std::string>{};
    case FamilyTag::delta_decorated:
        break;
    }
    return {};
}

} // namespace wellspec
