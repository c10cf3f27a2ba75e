#pragma once

// Gamma-family special functions used by every closed form in the library:
// log-gamma, regularized incomplete gamma P/Q, digamma, trigamma.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bweibull::specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240;

/// log Gamma(x), x > 0.
inline double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: requires x > 0");
    return std::lgamma(x);
}

namespace detail {

// Series for P(s,x), valid (fast) for x < s+1.
inline double gamma_p_series(double s, double x) {
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int n = 0; n < 100000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * std::numeric_limits<double>::epsilon())
            return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
    }
    throw std::runtime_error("gamma_p_series: no convergence");
}

// Modified Lentz continued fraction for Q(s,x), x >= s+1.
inline double gamma_q_cf(double s, double x) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double fpmin = std::numeric_limits<double>::min() / eps;
    double b = x + 1.0 - s;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= eps)
            return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
    }
    throw std::runtime_error("gamma_q_cf: no convergence");
}

} // namespace detail

/// Regularized lower incomplete gamma P(s,x), s > 0, x >= 0.
inline double gamma_p(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("gamma_p: requires s > 0");
    if (x < 0.0) throw std::domain_error("gamma_p: requires x >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return x < s + 1.0 ? detail::gamma_p_series(s, x) : 1.0 - detail::gamma_q_cf(s, x);
}

/// Regularized upper incomplete gamma Q(s,x). Accepts s = 0 with the
/// convention Q(0,x) = 0 (the limit of s*Gamma(s,x) terms in the closed forms).
inline double gamma_q(double s, double x) {
    if (s < 0.0) throw std::domain_error("gamma_q: requires s >= 0");
    if (x < 0.0) throw std::domain_error("gamma_q: requires x >= 0");
    if (s == 0.0) return 0.0;
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return x < s + 1.0 ? 1.0 - detail::gamma_p_series(s, x) : detail::gamma_q_cf(s, x);
}

/// Unregularized lower incomplete gamma(s,x) = P(s,x)*Gamma(s). May overflow
/// for large s; callers that need ratios should combine logs instead.
inline double lower_gamma(double s, double x) {
    return gamma_p(s, x) * std::exp(std::lgamma(s));
}

/// Unregularized upper incomplete Gamma(s,x), with Gamma(0,x) := 0.
inline double upper_gamma(double s, double x) {
    if (s == 0.0) return 0.0;
    return gamma_q(s, x) * std::exp(std::lgamma(s));
}

/// Psi^(0): recurrence up to x >= 10, then the Bernoulli asymptotic series.
inline double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma: requires x > 0");
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / x, r2 = r * r;
    result += std::log(x) - 0.5 * r
        - r2 * (1.0 / 12.0 - r2 * (1.0 / 120.0 - r2 * (1.0 / 252.0 - r2 * (1.0 / 240.0
        - r2 * (1.0 / 132.0 - r2 * (691.0 / 32760.0 - r2 / 12.0))))));
    return result;
}

/// Psi^(1), same recurrence/asymptotic split.
inline double trigamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("trigamma: requires x > 0");
    double result = 0.0;
    while (x < 10.0) {
        result += 1.0 / (x * x);
        x += 1.0;
    }
    const double r = 1.0 / x, r2 = r * r;
    result += r * (1.0 + 0.5 * r
        + r2 * (1.0 / 6.0 - r2 * (1.0 / 30.0 - r2 * (1.0 / 42.0 - r2 * (1.0 / 30.0
        - r2 * (5.0 / 66.0 - r2 * (691.0 / 2730.0 - r2 * 7.0 / 6.0)))))));
    return result;
}

} // namespace bweibull::specfun
