#include "wellspec/errors.hpp"
#include "wellspec/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace wellspec::specfun {

namespace {

constexpr long double eps_l = std::numeric_limits<long double>::epsilon();
constexpr int max_terms = 10000;
constexpr double max_abs_z = 200.0;

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    long double sum = 0.0L;
    long double carry = 0.0L;

    void add(long double x) {
        const long double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    [[nodiscard]] long double value() const { return sum + carry; }
};

} // namespace

namespace ext {

KummerSum kummer_series(long double a, long double b, long double z) {
    if (b <= 0.0L && b == std::floor(b)) {
        throw DomainError("kummer_m: b is a non-positive integer");
    }
    CompensatedSum sum;
    sum.add(1.0L);
    long double term = 1.0L;
    long double abs_total = 1.0L;
    for (int k = 0; k < max_terms; ++k) {
        const long double kl = k;
        const long double ratio = (a + kl) / (b + kl) * z / (kl + 1.0L);
        term *= ratio;
        if (term == 0.0L) {
            // Terminating series (a is a non-positive integer) or z == 0.
            return {sum.value(), 2.0L * eps_l * abs_total};
        }
        sum.add(term);
        abs_total += std::abs(term);
        const long double next_ratio =
            std::abs((a + kl + 1.0L) / (b + kl + 1.0L) * z / (kl + 2.0L));
        if (next_ratio < 0.5L && std::abs(term) <= eps_l * std::abs(sum.value())) {
            // Remaining tail is bounded by a geometric series with ratio < 1/2.
            return {sum.value(), 2.0L * eps_l * abs_total + 2.0L * std::abs(term)};
        }
    }
    throw ConvergenceError("kummer_m: series did not converge within " + std::to_string(max_terms) +
                           " terms");
}

} // namespace ext

EvalResult kummer_m(double a, double b, double z) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z)) {
        throw DomainError("kummer_m: argument is not finite");
    }
    if (std::abs(z) > max_abs_z) {
        throw DomainError("kummer_m: |z| exceeds 200");
    }
    if (z >= 0.0) {
        const auto s = ext::kummer_series(a, b, z);
        const double value = static_cast<double>(s.value);
        return {value, static_cast<double>(s.abs_error) +
                           std::numeric_limits<double>::epsilon() * std::abs(value)};
    }
    // Kummer's transformation keeps the series free of alternating terms.
    const long double scale = std::exp(static_cast<long double>(z));
    const auto s = ext::kummer_series(static_cast<long double>(b) - a, b, -static_cast<long double>(z));
    const double value = static_cast<double>(scale * s.value);
    return {value, static_cast<double>(scale * s.abs_error) +
                       std::numeric_limits<double>::epsilon() * std::abs(value)};
}

} // namespace wellspec::specfun
