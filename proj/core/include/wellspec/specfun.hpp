#pragma once

// Real-argument special functions needed by the closed-form resolvents:
// Gamma / reciprocal Gamma, Kummer's M, the parabolic cylinder function D_nu,
// the Airy functions and the physicists' Hermite polynomials.
//
// Everything is evaluated internally in extended precision (long double) and
// rounded to double on return. Functions returning EvalResult also report an
// estimate of the absolute error, which grows with cancellation.

namespace wellspec::specfun {

struct EvalResult {
    double value = 0.0;
    double est_abs_error = 0.0;
};

/// Gamma(x). Throws PoleError within 1e-12 of a non-positive integer.
double gamma(double x);

/// 1/Gamma(x), an entire function; exactly zero at 0, -1, -2, ...
double rgamma(double x);

/// Confluent hypergeometric M(a, b, z) = 1F1(a; b; z) for |z| <= 200.
/// Negative z is mapped through Kummer's transformation.
EvalResult kummer_m(double a, double b, double z);

/// Parabolic cylinder function D_nu(z) for |nu| <= 60, |z| <= 30.
EvalResult pcf_d(double nu, double z);

/// Airy functions on |x| <= 25.
EvalResult airy_ai(double x);
EvalResult airy_ai_prime(double x);
EvalResult airy_bi(double x);
EvalResult airy_bi_prime(double x);

struct AiryValues {
    EvalResult ai;
    EvalResult ai_prime;
    EvalResult bi;
    EvalResult bi_prime;
};

/// All four Airy values at once (cheaper than four separate calls).
AiryValues airy(double x);

/// Physicists' Hermite polynomial H_n(x) by three-term recurrence, n <= 2000.
double hermite_h(unsigned n, double x);

namespace ext {

// Extended-precision entry points shared between modules.
long double rgamma(long double x);
long double sinpi(long double x);

struct KummerSum {
    long double value = 0.0L;
    long double abs_error = 0.0L;
};

KummerSum kummer_series(long double a, long double b, long double z);

} // namespace ext

} // namespace wellspec::specfun
