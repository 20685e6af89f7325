#include "wellspec/errors.hpp"
#include "wellspec/specfun.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace wellspec::specfun {

namespace {

constexpr long double eps_l = std::numeric_limits<long double>::epsilon();
constexpr double eps_d = std::numeric_limits<double>::epsilon();
constexpr long double sqrt_pi_l = 1.772453850905516027298167483341145182798L;
constexpr long double sqrt2_l = std::numbers::sqrt2_v<long double>;
// Relative error budget of ext::rgamma (Stirling + reflection).
constexpr long double rgamma_rel_error = 32.0L * eps_l;
// Relative error below which the Kummer branch is accepted without looking further.
constexpr long double kummer_accept_rel = 1e-12L;

struct Branch {
    long double value = 0.0L;
    long double abs_error = std::numeric_limits<long double>::infinity();
};

// D_nu(z) = 2^{nu/2} sqrt(pi) e^{-z^2/4} [ M(-nu/2, 1/2, z^2/2) / Gamma((1-nu)/2)
//           - sqrt(2) z M((1-nu)/2, 3/2, z^2/2) / Gamma(-nu/2) ]
Branch kummer_branch(long double nu, long double z) {
    const long double w = 0.5L * z * z;
    const long double r1 = ext::rgamma(0.5L * (1.0L - nu));
    const long double r2 = ext::rgamma(-0.5L * nu);
    long double t1 = 0.0L;
    long double t2 = 0.0L;
    long double e1 = 0.0L;
    long double e2 = 0.0L;
    if (r1 != 0.0L) {
        const auto m1 = ext::kummer_series(-0.5L * nu, 0.5L, w);
        t1 = r1 * m1.value;
        e1 = std::abs(r1) * m1.abs_error;
    }
    if (r2 != 0.0L && z != 0.0L) {
        const auto m2 = ext::kummer_series(0.5L * (1.0L - nu), 1.5L, w);
        t2 = sqrt2_l * z * r2 * m2.value;
        e2 = sqrt2_l * std::abs(z * r2) * m2.abs_error;
    }
    const long double prefactor = std::exp2(0.5L * nu) * sqrt_pi_l * std::exp(-0.25L * z * z);
    const long double value = prefactor * (t1 - t2);
    const long double error =
        prefactor * (e1 + e2 + rgamma_rel_error * (std::abs(t1) + std::abs(t2))) +
        8.0L * eps_l * std::abs(value);
    return {value, error};
}

// D_nu(z) ~ z^nu e^{-z^2/4} sum_k (-1)^k (-nu)_{2k} / (k! (2 z^2)^k), optimally truncated.
std::optional<Branch> asymptotic_branch(long double nu, long double z) {
    if (z < 1.0L) {
        return std::nullopt;
    }
    constexpr int max_terms = 120;
    long double terms[max_terms];
    terms[0] = 1.0L;
    int count = 1;
    const long double inv = 1.0L / (2.0L * z * z);
    bool exact = false;
    for (int k = 0; k + 1 < max_terms; ++k) {
        const long double kl = k;
        const long double next = -terms[k] * (nu - 2.0L * kl) * (nu - 2.0L * kl - 1.0L) * inv / (kl + 1.0L);
        if (next == 0.0L) {
            exact = true;
            break;
        }
        terms[count++] = next;
    }
    // Truncate before the smallest term.
    int stop = count;
    long double omitted = 0.0L;
    if (!exact) {
        int smallest = 0;
        for (int k = 1; k < count; ++k) {
            if (std::abs(terms[k]) < std::abs(terms[smallest])) {
                smallest = k;
            }
        }
        stop = smallest;
        omitted = std::abs(terms[smallest]);
    }
    long double sum = 0.0L;
    long double abs_sum = 0.0L;
    for (int k = stop - 1; k >= 0; --k) {
        sum += terms[k];
        abs_sum += std::abs(terms[k]);
    }
    // The smallest-term bound is only meaningful once the terms have decayed.
    if (stop < 2 || omitted > 1e-3L * std::abs(sum)) {
        return std::nullopt;
    }
    const long double prefactor = std::exp(nu * std::log(z) - 0.25L * z * z);
    const long double value = prefactor * sum;
    const long double error = prefactor * (omitted + 4.0L * eps_l * abs_sum) + 8.0L * eps_l * std::abs(value);
    return Branch{value, error};
}

// For nu <= -1 and z > 0:
//   D_nu(z) = e^{-z^2/4} / Gamma(-nu) * int_0^inf t^{-nu-1} e^{-z t - t^2/2} dt,
// with a positive integrand, so there is no cancellation.
std::optional<Branch> integral_branch(long double nu, long double z) {
    if (nu > -1.0L || z <= 0.0L) {
        return std::nullopt;
    }
    const long double m = -nu - 1.0L;
    const long double peak = 0.5L * (-z + std::sqrt(z * z + 4.0L * m));
    const long double log_peak = (m > 0.0L ? m * std::log(peak) : 0.0L) - z * peak - 0.5L * peak * peak;
    auto integrand = [&](long double t) -> long double {
        if (t <= 0.0L) {
            return m > 0.0L ? 0.0L : std::exp(-log_peak);
        }
        return std::exp(m * std::log(t) - z * t - 0.5L * t * t - log_peak);
    };
    thread_local boost::math::quadrature::tanh_sinh<long double> quadrature(12);
    long double err_lo = 0.0L;
    long double err_hi = 0.0L;
    const long double tol = 4.0L * eps_l;
    const long double lower =
        peak > 0.0L ? quadrature.integrate(integrand, 0.0L, peak, tol, &err_lo) : 0.0L;
    const long double upper = quadrature.integrate(integrand, peak, peak + 40.0L, tol, &err_hi);
    const long double integral = lower + upper;
    const long double scale = std::exp(log_peak - 0.25L * z * z) * ext::rgamma(-nu);
    const long double value = scale * integral;
    const long double error = std::abs(scale) * (err_lo + err_hi) +
                              (rgamma_rel_error + 64.0L * eps_l) * std::abs(value);
    return Branch{value, error};
}

// For nu > -1 and z > 0: start from two integral-branch values at nu0 - 1, nu0
// with nu0 in (-2, -1] and run D_{v+1} = z D_v - v D_{v-1} upwards.
std::optional<Branch> recurrence_branch(long double nu, long double z) {
    if (nu <= -1.0L || z <= 0.0L) {
        return std::nullopt;
    }
    const int steps = static_cast<int>(std::ceil(nu + 1.0L));
    if (steps > 8) {
        return std::nullopt;
    }
    const long double nu0 = nu - steps;
    auto lower = integral_branch(nu0 - 1.0L, z);
    auto upper = integral_branch(nu0, z);
    if (!lower || !upper) {
        return std::nullopt;
    }
    long double prev = lower->value;
    long double prev_err = lower->abs_error;
    long double cur = upper->value;
    long double cur_err = upper->abs_error;
    long double v = nu0;
    for (int k = 0; k < steps; ++k) {
        const long double next = z * cur - v * prev;
        const long double next_err = z * cur_err + std::abs(v) * prev_err +
                                     4.0L * eps_l * (std::abs(z * cur) + std::abs(v * prev));
        prev = cur;
        prev_err = cur_err;
        cur = next;
        cur_err = next_err;
        v += 1.0L;
    }
    return Branch{cur, cur_err};
}

} // namespace

EvalResult pcf_d(double nu, double z) {
    if (!std::isfinite(nu) || !std::isfinite(z)) {
        throw DomainError("pcf_d: argument is not finite");
    }
    if (std::abs(nu) > 60.0 || std::abs(z) > 30.0) {
        throw DomainError("pcf_d: outside the validity window |nu| <= 60, |z| <= 30");
    }
    const long double nul = nu;
    const long double zl = z;
    Branch best = kummer_branch(nul, zl);
    if (zl > 0.0L && !(best.abs_error <= kummer_accept_rel * std::abs(best.value))) {
        for (const auto& candidate :
             {asymptotic_branch(nul, zl), integral_branch(nul, zl), recurrence_branch(nul, zl)}) {
            if (candidate && candidate->abs_error < best.abs_error) {
                best = *candidate;
            }
        }
    }
    const double value = static_cast<double>(best.value);
    return {value, static_cast<double>(best.abs_error) + eps_d * std::abs(value)};
}

} // namespace wellspec::specfun
