#include "wellspec/resolvent.hpp"

#include "wellspec/errors.hpp"
#include "wellspec/specfun.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace wellspec::resolvent {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps_d = std::numeric_limits<double>::epsilon();

double need(const std::optional<double>& v, const char* name, const char* where) {
    if (!v || !std::isfinite(*v)) {
        throw ParameterError(std::string(where) + ": missing or non-finite scale '" + name + "'");
    }
    return *v;
}

void check_common(const PhysicalScales& s, const char* where) {
    if (!(s.hbar > 0.0 && s.mass > 0.0)) {
        throw ParameterError(std::string(where) + ": hbar and mass must be > 0");
    }
}

double need_positive(const std::optional<double>& v, const char* name, const char* where) {
    const double value = need(v, name, where);
    if (!(value > 0.0)) {
        throw ParameterError(std::string(where) + ": scale '" + name + "' must be > 0");
    }
    return value;
}

GreenEval make(double value, double error, double x, double xp) {
    GreenEval g;
    g.value = value;
    g.est_abs_error = error;
    g.x_lt = std::min(x, xp);
    g.x_gt = std::max(x, xp);
    return g;
}

void require_finite_args(double x, double xp, double energy, const char* where) {
    if (!std::isfinite(x) || !std::isfinite(xp) || !std::isfinite(energy)) {
        throw DomainError(std::string(where) + ": arguments must be finite");
    }
}

// Number of zeros of Ai(-t) Ai'(-t) on [0, rho - 1e-3]; used only to label near-pole errors.
int linear_level_index(double rho) {
    int count = 0;
    double prev = 0.0;
    for (double t = 0.0; t <= rho - 1e-3; t += 0.01) {
        const auto a = specfun::airy(-t);
        const double v = a.ai.value * a.ai_prime.value;
        if (t > 0.0 && ((v < 0.0) != (prev < 0.0))) {
            ++count;
        }
        prev = v;
    }
    return count;
}

// Continuation of the left-decaying linear-well solution, normalized to Ai(-rho) at 0.
struct LinearSolutions {
    double zeta;
    double rho;
    double coef_ai;
    double coef_bi;

    double left(double x) const {
        const double t = zeta * x;
        if (x <= 0.0) {
            return specfun::airy(-t - rho).ai.value;
        }
        const auto a = specfun::airy(t - rho);
        return coef_ai * a.ai.value + coef_bi * a.bi.value;
    }

    double left_prime(double x) const {
        const double t = zeta * x;
        if (x <= 0.0) {
            return -zeta * specfun::airy(-t - rho).ai_prime.value;
        }
        const auto a = specfun::airy(t - rho);
        return zeta * (coef_ai * a.ai_prime.value + coef_bi * a.bi_prime.value);
    }
};

LinearSolutions linear_solutions(double energy, const PhysicalScales& s, const char* where) {
    check_common(s, where);
    const double alpha = need_positive(s.alpha1, "alpha1", where);
    const double k = std::cbrt(2.0 * s.mass / (s.hbar * s.hbar));
    LinearSolutions sol{};
    sol.zeta = alpha * k;
    sol.rho = energy * k / (alpha * alpha);
    const auto a0 = specfun::airy(-sol.rho);
    sol.coef_ai = pi * (a0.ai.value * a0.bi_prime.value + a0.ai_prime.value * a0.bi.value);
    sol.coef_bi = -2.0 * pi * a0.ai.value * a0.ai_prime.value;
    return sol;
}

// Even/odd Kummer pair of Weber's equation y'' = (z^2/4 - nu - 1/2) y with
// y1(0) = 1, y1'(0) = 0, y2(0) = 0, y2'(0) = 1.
struct WeberPair {
    long double y1, y1p, y2, y2p;
};

WeberPair weber_pair(long double nu, long double z) {
    const long double w = 0.5L * z * z;
    const long double g = std::exp(-0.25L * z * z);
    const auto m1 = specfun::ext::kummer_series(-0.5L * nu, 0.5L, w);
    const auto m1s = specfun::ext::kummer_series(1.0L - 0.5L * nu, 1.5L, w);
    const auto m2 = specfun::ext::kummer_series(0.5L * (1.0L - nu), 1.5L, w);
    const auto m2s = specfun::ext::kummer_series(0.5L * (3.0L - nu), 2.5L, w);
    WeberPair p{};
    p.y1 = g * m1.value;
    p.y1p = z * g * (-0.5L * m1.value - nu * m1s.value);
    p.y2 = z * g * m2.value;
    p.y2p = g * (m2.value * (1.0L - w) + z * z * (1.0L - nu) / 3.0L * m2s.value);
    return p;
}

} // namespace

GreenEval to_g_tilde(const GreenEval& g, const PhysicalScales& scales) {
    if (g.convention == Convention::g_tilde) {
        return g;
    }
    GreenEval out = g;
    const double f = -scales.hbar * scales.hbar / (2.0 * scales.mass);
    out.value = f * g.value;
    out.est_abs_error = std::abs(f) * g.est_abs_error;
    out.convention = Convention::g_tilde;
    return out;
}

GreenEval to_g(const GreenEval& g, const PhysicalScales& scales) {
    if (g.convention == Convention::g) {
        return g;
    }
    GreenEval out = g;
    const double f = -2.0 * scales.mass / (scales.hbar * scales.hbar);
    out.value = f * g.value;
    out.est_abs_error = std::abs(f) * g.est_abs_error;
    out.convention = Convention::g;
    return out;
}

GreenEval green_ho(double x, double xp, double energy, const PhysicalScales& s) {
    constexpr const char* where = "green_ho";
    require_finite_args(x, xp, energy, where);
    check_common(s, where);
    const double omega = need_positive(s.omega1, "omega1", where);
    const double eps = energy / (s.hbar * omega);
    const double n = std::nearbyint(eps - 0.5);
    if (n >= 0.0 && std::abs(eps - (n + 0.5)) <= 1e-9) {
        throw NearPoleError("green_ho: energy within 1e-9 of level " + std::to_string(static_cast<int>(n)),
                            static_cast<int>(n));
    }
    const double mu = std::sqrt(2.0 * s.mass * omega / s.hbar);
    const double x_lt = std::min(x, xp);
    const double x_gt = std::max(x, xp);
    const double nu = eps - 0.5;
    const auto d_gt = specfun::pcf_d(nu, mu * x_gt);
    const auto d_lt = specfun::pcf_d(nu, -(mu * x_lt));
    const double pref = std::sqrt(s.mass / (pi * omega * s.hbar * s.hbar * s.hbar)) * specfun::gamma(0.5 - eps);
    const double value = pref * (d_gt.value * d_lt.value);
    const double error = std::abs(pref) * (std::abs(d_gt.value) * d_lt.est_abs_error +
                                           std::abs(d_lt.value) * d_gt.est_abs_error) +
                         8.0 * eps_d * std::abs(value);
    return make(value, error, x, xp);
}

GreenEval green_ho_series(double x, double xp, double energy, const PhysicalScales& s,
                          const SeriesOptions& options) {
    constexpr const char* where = "green_ho_series";
    require_finite_args(x, xp, energy, where);
    check_common(s, where);
    const double omega = need_positive(s.omega1, "omega1", where);
    const unsigned n_terms = options.n_terms;
    if (n_terms == 0 || n_terms > 2000) {
        throw DomainError("green_ho_series: n_terms must be in [1, 2000]");
    }
    const double eps = energy / (s.hbar * omega);
    const double n_near = std::nearbyint(eps - 0.5);
    if (n_near >= 0.0 && std::abs(eps - (n_near + 0.5)) <= 1e-6) {
        throw NearPoleError("green_ho_series: energy within 1e-6 of level " +
                                std::to_string(static_cast<int>(n_near)),
                            static_cast<int>(n_near));
    }
    const double c = 0.5 - eps;
    if (options.tail_correction && n_terms + c <= 0.5) {
        throw DomainError("green_ho_series: tail correction needs n_terms > eps");
    }
    const double scale = std::sqrt(s.mass * omega / s.hbar);
    const double y = scale * x;
    const double yp = scale * xp;

    // t_n = h_n(y) h_n(y') with h_n = H_n / sqrt(2^n n!).
    std::vector<double> t(n_terms);
    double h_prev = 0.0, h = 1.0, hp_prev = 0.0, hp = 1.0;
    double sum = 0.0;
    double abs_sum = 0.0;
    for (unsigned n = 0; n < n_terms; ++n) {
        t[n] = h * hp;
        const double term = t[n] / (n + c);
        sum += term;
        abs_sum += std::abs(term);
        const double a = std::sqrt(2.0 / (n + 1.0));
        const double b = std::sqrt(n / (n + 1.0));
        const double h_next = y * a * h - b * h_prev;
        const double hp_next = yp * a * hp - b * hp_prev;
        h_prev = h;
        h = h_next;
        hp_prev = hp;
        hp = hp_next;
    }
    double error = 16.0 * eps_d * abs_sum;

    if (options.tail_correction) {
        const double s0 = std::exp(-40.0 / n_terms);
        const double ysum = y * y + yp * yp;
        // Integrand s^{c-1} [K(s) - P_N(s)], with K the Mehler kernel and P_N its partial sum.
        auto integrand = [&](double sv, double sc) {
            const double one_minus = sc > 0.0 ? sc : 1.0 - sv;
            const double one_minus_sq = one_minus * (1.0 + sv);
            double poly = 0.0;
            for (unsigned n = n_terms; n-- > 0;) {
                poly = poly * sv + t[n];
            }
            double kernel = 0.0;
            if (one_minus_sq > 0.0) {
                const double expo = (2.0 * y * yp * sv - ysum * sv * sv) / one_minus_sq;
                kernel = std::exp(expo) / std::sqrt(one_minus_sq);
            }
            return std::pow(sv, c - 1.0) * (kernel - poly);
        };
        thread_local boost::math::quadrature::tanh_sinh<double> quadrature;
        double q_err = 0.0;
        double l1 = 0.0;
        const double tail = quadrature.integrate(integrand, s0, 1.0, 1e-13, &q_err, &l1);
        sum += tail;
        error = 16.0 * eps_d * (abs_sum + l1) + q_err;
    } else {
        // Size of the next term as a rough truncation indicator.
        error += std::abs(h * hp / (n_terms + c));
    }
    const double pref = std::sqrt(s.mass / (omega * s.hbar * s.hbar * s.hbar)) *
                        std::exp(-0.5 * (y * y + yp * yp)) / std::sqrt(pi);
    return make(pref * sum, std::abs(pref) * error, x, xp);
}

GreenEval green_ho_stark(double x, double xp, double energy, const PhysicalScales& s) {
    constexpr const char* where = "green_ho_stark";
    require_finite_args(x, xp, energy, where);
    check_common(s, where);
    const double omega = need_positive(s.omega1, "omega1", where);
    const double alpha = need(s.alpha1, "alpha1", where);
    const double phi = alpha * alpha * alpha / (s.mass * omega * omega);
    const double shift = 0.5 * s.mass * omega * omega * phi * phi;
    GreenEval g = green_ho(x + phi, xp + phi, energy + shift, s);
    g.x_lt = std::min(x, xp);
    g.x_gt = std::max(x, xp);
    return g;
}

GreenEval green_linear(double x, double xp, double energy, const PhysicalScales& s) {
    constexpr const char* where = "green_linear";
    require_finite_args(x, xp, energy, where);
    const auto sol = linear_solutions(energy, s, where);
    const auto a0 = specfun::airy(-sol.rho);
    const double ai = a0.ai.value;
    const double aip = a0.ai_prime.value;
    const double denom = ai * aip;
    if (std::abs(denom) <= 1e-10) {
        const bool odd = std::abs(ai) < std::abs(aip);
        throw NearPoleError("green_linear: Ai(-rho) Ai'(-rho) within 1e-10 of 0 (" +
                                std::string(odd ? "odd" : "even") + " level)",
                            linear_level_index(sol.rho), odd ? "odd" : "even");
    }
    const double x_lt = std::min(x, xp);
    const double x_gt = std::max(x, xp);
    const double f_lt = sol.left(x_lt);
    const double f_gt = sol.left(-x_gt);
    const double g_tilde = (f_lt * f_gt) / (2.0 * sol.zeta * denom);
    const double factor = -2.0 * s.mass / (s.hbar * s.hbar);
    const double value = factor * g_tilde;
    const double rel = 64.0 * eps_d + 4e-15 / std::min(1.0, std::abs(denom));
    return make(value, rel * std::abs(value), x, xp);
}

GreenEval green_ho_plus_abs(double x, double xp, double energy, const PhysicalScales& s) {
    constexpr const char* where = "green_ho_plus_abs";
    require_finite_args(x, xp, energy, where);
    check_common(s, where);
    const double omega = need_positive(s.omega1, "omega1", where);
    const double alpha = need(s.alpha1, "alpha1", where);
    if (alpha < 0.0) {
        throw ParameterError("green_ho_plus_abs: alpha1 must be >= 0");
    }
    const double mu = std::sqrt(2.0 * s.mass * omega / s.hbar);
    const double phi = alpha * alpha * alpha / (s.mass * omega * omega);
    const double z0 = mu * phi;
    const double eps = energy / (s.hbar * omega);
    const double sigma = eps + 0.25 * z0 * z0;
    const double nu = sigma - 0.5;
    const auto d0 = specfun::pcf_d(nu, z0);
    const auto d1 = specfun::pcf_d(nu + 1.0, z0);
    const double even_factor = z0 * d0.value - 2.0 * d1.value;
    if (std::abs(d0.value * even_factor) <= 1e-10) {
        const bool odd = std::abs(d0.value) < std::abs(even_factor);
        throw NearPoleError("green_ho_plus_abs: denominator within 1e-10 of 0 (" +
                                std::string(odd ? "odd" : "even") + " level)",
                            -1, odd ? "odd" : "even");
    }
    const double wronskian = mu * d0.value * even_factor;

    // Left solution D_nu(mu(phi - x)) for x <= 0, continued with the Kummer pair for x > 0.
    const long double v0 = d0.value;
    const long double dv0 = -(0.5L * z0 * d0.value - d1.value);
    const WeberPair at0 = weber_pair(nu, z0);
    const long double coef1 = at0.y2p * v0 - at0.y2 * dv0;
    const long double coef2 = -at0.y1p * v0 + at0.y1 * dv0;
    auto left = [&](double u) -> double {
        if (u <= 0.0) {
            return specfun::pcf_d(nu, mu * (phi - u)).value;
        }
        const WeberPair w = weber_pair(nu, static_cast<long double>(mu) * (u + phi));
        return static_cast<double>(coef1 * w.y1 + coef2 * w.y2);
    };
    const double x_lt = std::min(x, xp);
    const double x_gt = std::max(x, xp);
    const double f_lt = left(x_lt);
    const double f_gt = left(-x_gt);
    const double factor = -2.0 * s.mass / (s.hbar * s.hbar);
    const double value = factor * (f_lt * f_gt) / wronskian;
    const double rel = 64.0 * eps_d + (d0.est_abs_error + d1.est_abs_error) /
                                          std::max(1e-300, std::abs(d0.value * even_factor));
    return make(value, rel * std::abs(value), x, xp);
}

GreenEval green_decorated(double x, double xp, double energy, const PotentialFamily& family) {
    constexpr const char* where = "green_decorated";
    require_finite_args(x, xp, energy, where);
    if (family.tag != FamilyTag::delta_decorated) {
        throw ParameterError("green_decorated: family must be DELTA_DECORATED");
    }
    family.validate();
    const auto& s = family.scales;
    const double a = *s.delta_strength;
    const double q = *s.delta_position;
    auto base = [&](double u, double v) {
        return family.base == FamilyTag::ho ? green_ho(u, v, energy, s) : green_linear(u, v, energy, s);
    };
    const double x_lt = std::min(x, xp);
    const double x_gt = std::max(x, xp);
    const auto g_qq = base(q, q);
    const double denom = 1.0 + a * g_qq.value;
    if (std::abs(denom) <= 1e-12) {
        throw NearPoleError("green_decorated: 1 + a G(q,q) within 1e-12 of 0 (decorated bound state)");
    }
    const auto g0 = base(x_lt, x_gt);
    const auto g_xq = base(x_lt, q);
    const auto g_qx = base(q, x_gt);
    const double correction = a * (g_xq.value * g_qx.value) / denom;
    const double value = g0.value - correction;
    const double rel_corr = (g_xq.est_abs_error / std::max(1e-300, std::abs(g_xq.value)) +
                             g_qx.est_abs_error / std::max(1e-300, std::abs(g_qx.value)) +
                             std::abs(a) * g_qq.est_abs_error / std::abs(denom));
    const double error = g0.est_abs_error + std::abs(correction) * rel_corr + 8.0 * eps_d * std::abs(value);
    return make(value, error, x, xp);
}

bool has_closed_form(const PotentialFamily& family) {
    switch (family.tag) {
    case FamilyTag::ho:
    case FamilyTag::ho_stark:
    case FamilyTag::linear_abs:
    case FamilyTag::ho_plus_abs:
    case FamilyTag::delta_decorated:
        return true;
    default:
        return false;
    }
}

GreenEval green(const PotentialFamily& family, double x, double xp, double energy) {
    family.validate();
    switch (family.tag) {
    case FamilyTag::ho:
        return green_ho(x, xp, energy, family.scales);
    case FamilyTag::ho_stark:
        return green_ho_stark(x, xp, energy, family.scales);
    case FamilyTag::linear_abs:
        return green_linear(x, xp, energy, family.scales);
    case FamilyTag::ho_plus_abs:
        return green_ho_plus_abs(x, xp, energy, family.scales);
    case FamilyTag::delta_decorated:
        return green_decorated(x, xp, energy, family);
    default:
        throw ParameterError("green: no closed-form Green function for " + family.name());
    }
}

double linear_wronskian(double x0, double energy, const PhysicalScales& s) {
    const auto sol = linear_solutions(energy, s, "linear_wronskian");
    // psi_R(x) = psi_L(-x).
    const double l = sol.left(x0);
    const double lp = sol.left_prime(x0);
    const double r = sol.left(-x0);
    const double rp = -sol.left_prime(-x0);
    return l * rp - lp * r;
}

} // namespace wellspec::resolvent
