#include "wellspec/errors.hpp"
#include "wellspec/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace wellspec::specfun {

namespace {

constexpr long double pi_l = std::numbers::pi_v<long double>;

// B_{2k} / (2k (2k-1)) for the Stirling series of ln Gamma.
constexpr std::array<long double, 9> stirling_coeffs{
    1.0L / 12.0L,           -1.0L / 360.0L,       1.0L / 1260.0L,
    -1.0L / 1680.0L,        1.0L / 1188.0L,       -691.0L / 360360.0L,
    1.0L / 156.0L,          -3617.0L / 122400.0L, 43867.0L / 244188.0L,
};

constexpr long double stirling_threshold = 20.0L;

long double lngamma_large(long double y) {
    const long double inv = 1.0L / y;
    const long double inv2 = inv * inv;
    long double power = inv;
    long double series = 0.0L;
    for (long double c : stirling_coeffs) {
        series += c * power;
        power *= inv2;
    }
    return (y - 0.5L) * std::log(y) - y + 0.5L * std::log(2.0L * pi_l) + series;
}

// Gamma(x) for x > 0. Arguments are shifted into [20, 21) so that the
// exponential of the Stirling sum stays small; very large ones use it directly.
long double gamma_positive(long double x) {
    if (x > 300.0L) {
        return std::exp(lngamma_large(x));
    }
    long double y = x;
    if (y < stirling_threshold) {
        long double shift_product = 1.0L;
        while (y < stirling_threshold) {
            shift_product *= y;
            y += 1.0L;
        }
        return std::exp(lngamma_large(y)) / shift_product;
    }
    long double falling = 1.0L;
    while (y >= stirling_threshold + 1.0L) {
        y -= 1.0L;
        falling *= y;
    }
    return std::exp(lngamma_large(y)) * falling;
}

bool is_nonpositive_integer(long double x) { return x <= 0.0L && x == std::floor(x); }

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + ": argument is not finite");
    }
}

} // namespace

namespace ext {

long double sinpi(long double x) {
    long double r = std::fmod(x, 2.0L);
    if (r > 1.0L) {
        r -= 2.0L;
    } else if (r < -1.0L) {
        r += 2.0L;
    }
    if (r > 0.5L) {
        r = 1.0L - r;
    } else if (r < -0.5L) {
        r = -1.0L - r;
    }
    return std::sin(pi_l * r);
}

long double rgamma(long double x) {
    if (is_nonpositive_integer(x)) {
        return 0.0L;
    }
    if (x < 0.5L) {
        // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi.
        return sinpi(x) * gamma_positive(1.0L - x) / pi_l;
    }
    return 1.0L / gamma_positive(x);
}

} // namespace ext

double rgamma(double x) {
    require_finite(x, "rgamma");
    return static_cast<double>(ext::rgamma(x));
}

double gamma(double x) {
    require_finite(x, "gamma");
    if (x <= 0.0 && std::abs(x - std::nearbyint(x)) <= 1e-12) {
        throw PoleError("gamma: pole at non-positive integer " + std::to_string(std::nearbyint(x)));
    }
    const long double xl = x;
    if (xl < 0.5L) {
        return static_cast<double>(pi_l / (ext::sinpi(xl) * gamma_positive(1.0L - xl)));
    }
    return static_cast<double>(gamma_positive(xl));
}

} // namespace wellspec::specfun
