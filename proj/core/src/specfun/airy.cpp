#include "wellspec/errors.hpp"
#include "wellspec/specfun.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace wellspec::specfun {

namespace {

constexpr long double eps_l = std::numeric_limits<long double>::epsilon();
constexpr double eps_d = std::numeric_limits<double>::epsilon();
constexpr long double pi_l = std::numbers::pi_v<long double>;
constexpr long double sqrt_pi_l = 1.772453850905516027298167483341145182798L;
constexpr long double sqrt3_l = std::numbers::sqrt3_v<long double>;

// Ai(0) = 1 / (3^{2/3} Gamma(2/3)),  -Ai'(0) = 1 / (3^{1/3} Gamma(1/3)).
constexpr long double ai0 = 0.355028053887817239260063186004183176L;
constexpr long double neg_aip0 = 0.258819403792806798405183560189203963L;

constexpr double max_abs_x = 25.0;
// Maclaurin series is used on [-8, 3] for Ai/Ai' and on [-8, 25] for Bi/Bi'.
// Ai/Ai' use a Laplace-type integral on (3, 10] and the asymptotic series beyond.
constexpr long double series_upper_ai = 3.0L;
constexpr long double integral_upper_ai = 10.0L;
constexpr long double series_lower = -8.0L;

struct Value {
    long double value = 0.0L;
    long double error = 0.0L;
};

struct Quad {
    Value ai, aip, bi, bip;
};

// The two power-series solutions f (even-like) and g (odd-like) with derivatives.
Quad maclaurin(long double x) {
    const long double x3 = x * x * x;
    long double a = 1.0L, f = 1.0L, abs_f = 1.0L;  // f terms
    long double b = x, g = x, abs_g = std::abs(x); // g terms
    long double ad = 0.0L, fd = 0.0L, abs_fd = 0.0L;
    long double bd = 1.0L, gd = 1.0L, abs_gd = 1.0L;
    for (int k = 1; k < 400; ++k) {
        const long double kl = k;
        a *= x3 / ((3.0L * kl - 1.0L) * (3.0L * kl));
        b *= x3 / ((3.0L * kl) * (3.0L * kl + 1.0L));
        ad = (k == 1) ? 0.5L * x * x : ad * x3 / ((3.0L * kl - 3.0L) * (3.0L * kl - 1.0L));
        bd *= x3 / ((3.0L * kl - 2.0L) * (3.0L * kl));
        f += a;
        g += b;
        fd += ad;
        gd += bd;
        abs_f += std::abs(a);
        abs_g += std::abs(b);
        abs_fd += std::abs(ad);
        abs_gd += std::abs(bd);
        const bool shrinking = std::abs(x3) < 0.5L * (3.0L * kl) * (3.0L * kl - 2.0L);
        const long double tol = eps_l * 1e-2L;
        if (shrinking && std::abs(a) <= tol * abs_f && std::abs(b) <= tol * (abs_g + 1e-300L) &&
            std::abs(ad) <= tol * (abs_fd + 1e-300L) && std::abs(bd) <= tol * abs_gd) {
            break;
        }
    }
    const long double c1 = ai0;
    const long double c2 = neg_aip0;
    const long double rounding = 8.0L * eps_l;
    Quad q;
    q.ai = {c1 * f - c2 * g, rounding * (c1 * abs_f + c2 * abs_g)};
    q.aip = {c1 * fd - c2 * gd, rounding * (c1 * abs_fd + c2 * abs_gd)};
    q.bi = {sqrt3_l * (c1 * f + c2 * g), sqrt3_l * rounding * (c1 * abs_f + c2 * abs_g)};
    q.bip = {sqrt3_l * (c1 * fd + c2 * gd), sqrt3_l * rounding * (c1 * abs_fd + c2 * abs_gd)};
    return q;
}

constexpr int n_coeffs = 80;

struct AsymptoticCoefficients {
    std::array<long double, n_coeffs> u{};
    std::array<long double, n_coeffs> v{};
};

const AsymptoticCoefficients& coefficients() {
    static const AsymptoticCoefficients c = [] {
        AsymptoticCoefficients out;
        out.u[0] = 1.0L;
        out.v[0] = 1.0L;
        for (int k = 1; k < n_coeffs; ++k) {
            const long double kl = k;
            out.u[k] = out.u[k - 1] * (6.0L * kl - 5.0L) * (6.0L * kl - 3.0L) * (6.0L * kl - 1.0L) /
                       (216.0L * kl * (2.0L * kl - 1.0L));
            out.v[k] = -out.u[k] * (6.0L * kl + 1.0L) / (6.0L * kl - 1.0L);
        }
        return out;
    }();
    return c;
}

// sum_i (-1)^i c[start + i*stride] / zeta^{start + i*stride}, truncated before the
// smallest term; the error estimate is the magnitude of that smallest term.
Value asymptotic_sum(const std::array<long double, n_coeffs>& c, int start, int stride, long double zeta) {
    long double sum = 0.0L;
    long double previous = std::numeric_limits<long double>::infinity();
    long double sign = 1.0L;
    for (int j = start; j < n_coeffs; j += stride) {
        const long double term = sign * c[static_cast<std::size_t>(j)] / std::pow(zeta, static_cast<long double>(j));
        if (std::abs(term) >= previous) {
            return {sum, previous};
        }
        if (std::abs(term) <= eps_l * std::abs(sum)) {
            return {sum + term, std::abs(term)};
        }
        sum += term;
        previous = std::abs(term);
        sign = -sign;
    }
    return {sum, previous};
}

// Ai, Ai' for x > 10 (exponentially small regime).
void asymptotic_positive(long double x, Quad& q) {
    const auto& c = coefficients();
    const long double zeta = 2.0L / 3.0L * x * std::sqrt(x);
    const long double quarter = std::pow(x, 0.25L);
    const long double decay = std::exp(-zeta) / (2.0L * sqrt_pi_l);
    const Value su = asymptotic_sum(c.u, 0, 1, zeta);
    const Value sv = asymptotic_sum(c.v, 0, 1, zeta);
    q.ai = {decay / quarter * su.value, decay / quarter * (su.error + 4.0L * eps_l)};
    q.aip = {-decay * quarter * sv.value, decay * quarter * (sv.error + 4.0L * eps_l)};
}

// All four functions for x < -8 (oscillatory regime).
Quad asymptotic_negative(long double x) {
    const auto& c = coefficients();
    const long double t = -x;
    const long double zeta = 2.0L / 3.0L * t * std::sqrt(t);
    const long double quarter = std::pow(t, 0.25L);
    const long double theta = zeta + 0.25L * pi_l;
    const long double s = std::sin(theta);
    const long double co = std::cos(theta);
    const Value pu = asymptotic_sum(c.u, 0, 2, zeta);
    const Value qu = asymptotic_sum(c.u, 1, 2, zeta);
    const Value pv = asymptotic_sum(c.v, 0, 2, zeta);
    const Value qv = asymptotic_sum(c.v, 1, 2, zeta);
    const long double amp_u = 1.0L / (sqrt_pi_l * quarter);
    const long double amp_v = quarter / sqrt_pi_l;
    // Phase error of sin/cos at |theta| ~ 100 is a few ulps of theta.
    const long double phase = 4.0L * eps_l * theta;
    const long double err_u = amp_u * (pu.error + qu.error + phase * (std::abs(pu.value) + std::abs(qu.value)));
    const long double err_v = amp_v * (pv.error + qv.error + phase * (std::abs(pv.value) + std::abs(qv.value)));
    Quad q;
    q.ai = {amp_u * (s * pu.value - co * qu.value), err_u};
    q.aip = {-amp_v * (co * pv.value + s * qv.value), err_v};
    q.bi = {amp_u * (co * pu.value + s * qu.value), err_u};
    q.bip = {amp_v * (s * pv.value - co * qv.value), err_v};
    return q;
}

// Ai(x) = e^{-zeta} / (pi x^{1/4}) K(c), K(c) = int_0^inf e^{-s^2} cos(c s^3) ds,
// c = 1 / (3 x^{3/4}); Ai' follows from differentiating under the integral.
void integral_positive(long double x, Quad& q) {
    thread_local boost::math::quadrature::tanh_sinh<long double> quadrature(12);
    const long double zeta = 2.0L / 3.0L * x * std::sqrt(x);
    const long double quarter = std::pow(x, 0.25L);
    const long double c = 1.0L / (3.0L * quarter * quarter * quarter);
    // e^{-s^2} < 1e-24 beyond s = 7.5.
    constexpr long double upper = 7.5L;
    long double err_k = 0.0L, l1_k = 0.0L, err_j = 0.0L, l1_j = 0.0L;
    const long double k = quadrature.integrate(
        [c](long double s) { return std::exp(-s * s) * std::cos(c * s * s * s); }, 0.0L, upper, 4.0L * eps_l,
        &err_k, &l1_k);
    const long double j = quadrature.integrate(
        [c](long double s) { return std::exp(-s * s) * s * s * s * std::sin(c * s * s * s); }, 0.0L, upper,
        4.0L * eps_l, &err_j, &l1_j);
    const long double scale = std::exp(-zeta) / pi_l;
    const long double dk = 0.75L * c / x * j; // dK/dx
    const long double ai = scale / quarter * k;
    const long double aip = scale * (-(std::sqrt(x) / quarter + 0.25L / (x * quarter)) * k + dk / quarter);
    const long double ek = std::max(err_k, 8.0L * eps_l * l1_k);
    const long double ej = std::max(err_j, 8.0L * eps_l * l1_j);
    q.ai = {ai, scale / quarter * ek + 8.0L * eps_l * std::abs(ai)};
    q.aip = {aip,
             scale * ((std::sqrt(x) / quarter + 0.25L / (x * quarter)) * ek + 0.75L * c / (x * quarter) * ej) +
                 8.0L * eps_l * std::abs(aip)};
}

EvalResult to_result(const Value& v) {
    const double value = static_cast<double>(v.value);
    return {value, static_cast<double>(v.error) + eps_d * std::abs(value)};
}

} // namespace

AiryValues airy(double x) {
    if (!std::isfinite(x)) {
        throw DomainError("airy: argument is not finite");
    }
    if (std::abs(x) > max_abs_x) {
        throw DomainError("airy: |x| exceeds 25");
    }
    const long double xl = x;
    Quad q;
    if (xl < series_lower) {
        q = asymptotic_negative(xl);
    } else {
        q = maclaurin(xl);
        if (xl > integral_upper_ai) {
            asymptotic_positive(xl, q);
        } else if (xl > series_upper_ai) {
            integral_positive(xl, q);
        }
    }
    return {to_result(q.ai), to_result(q.aip), to_result(q.bi), to_result(q.bip)};
}

EvalResult airy_ai(double x) { return airy(x).ai; }
EvalResult airy_ai_prime(double x) { return airy(x).ai_prime; }
EvalResult airy_bi(double x) { return airy(x).bi; }
EvalResult airy_bi_prime(double x) { return airy(x).bi_prime; }

} // namespace wellspec::specfun
