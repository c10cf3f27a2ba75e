#pragma once

// Validated sample container plus the log- and log_q-likelihood objectives
// with analytic score and Hessian.

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "distribution.hpp"
#include "params.hpp"

namespace bweibull {

struct Dataset {
    std::vector<double> values;
    std::string label;

    Dataset(std::vector<double> v, std::string lbl) : values(std::move(v)), label(std::move(lbl)) {
        if (values.size() < 3)
            throw std::invalid_argument("Dataset: need at least 3 observations (three free parameters)");
        for (double x : values)
            if (!(x > 0.0) || !std::isfinite(x))
                throw std::invalid_argument("Dataset: all values must be positive finite reals");
    }

    std::size_t n() const { return values.size(); }
};

/// l(theta; x) = -n log Z + sum log[1+(1-delta x_i)^2] + Weibull log-likelihood.
inline double log_likelihood(const ParamVector& p, const Dataset& data) {
    const double a = p.alpha(), b = p.beta(), d = p.delta();
    const double n = static_cast<double>(data.n());
    double acc = n * (std::log(a) - std::log(b) - p.log_z());
    for (double x : data.values) {
        const double t = x / b;
        const double od = 1.0 - d * x;
        acc += std::log1p(od * od) + (a - 1.0) * std::log(t) - std::pow(t, a);
    }
    return acc;
}

/// l_q(theta; x) = sum log_q f(x_i), log_q(f) = (f^{1-q} - 1)/(1-q), q != 1.
inline double logq_likelihood(const ParamVector& p, const Dataset& data, double q) {
    if (q == 1.0) throw std::domain_error("logq_likelihood: requires q != 1");
    const Distribution dist(p);
    double acc = 0.0;
    for (double x : data.values)
        acc += std::expm1((1.0 - q) * dist.log_pdf(x)) / (1.0 - q);
    return acc;
}

/// Per-observation score of log f at x.
inline Vec3 score_one(const ParamVector& p, double x) {
    const double a = p.alpha(), b = p.beta(), d = p.delta();
    const Vec3 g = p.zlog_gradient();
    const double t = x / b, lt = std::log(t), ta = std::pow(t, a);
    const double od = 1.0 - d * x;
    return {-g[0] + 1.0 / a + lt - ta * lt,
            -g[1] - a / b + (a / b) * ta,
            -g[2] - 2.0 * x * od / (1.0 + od * od)};
}

/// Analytic score of the log-likelihood.
inline Vec3 score(const ParamVector& p, const Dataset& data) {
    const double a = p.alpha(), b = p.beta(), d = p.delta();
    const double n = static_cast<double>(data.n());
    const Vec3 g = p.zlog_gradient();
    double slt = 0.0, sta = 0.0, stalt = 0.0, sdel = 0.0;
    for (double x : data.values) {
        const double t = x / b, lt = std::log(t), ta = std::pow(t, a);
        const double od = 1.0 - d * x;
        slt += lt;
        sta += ta;
        stalt += ta * lt;
        sdel += 2.0 * x * od / (1.0 + od * od);
    }
    return {-n * g[0] + n / a + slt - stalt,
            -n * g[1] - n * a / b + (a / b) * sta,
            -n * g[2] - sdel};
}

/// Analytic Hessian of the log-likelihood (symmetric).
inline Mat3 hessian(const ParamVector& p, const Dataset& data) {
    const double a = p.alpha(), b = p.beta(), d = p.delta();
    const double n = static_cast<double>(data.n());
    const Mat3 hz = p.zlog_hessian();
    double sta = 0.0, stalt = 0.0, stalt2 = 0.0, sdd = 0.0;
    for (double x : data.values) {
        const double t = x / b, lt = std::log(t), ta = std::pow(t, a);
        const double od = 1.0 - d * x;
        const double den = 1.0 + od * od;
        sta += ta;
        stalt += ta * lt;
        stalt2 += ta * lt * lt;
        sdd += 2.0 * x * x * (1.0 - od * od) / (den * den);
    }
    Mat3 h{};
    h[0][0] = -n * hz[0][0] - n / (a * a) - stalt2;
    h[1][1] = -n * hz[1][1] + n * a / (b * b) - (a * (a + 1.0) / (b * b)) * sta;
    h[2][2] = -n * hz[2][2] + sdd;
    h[0][1] = h[1][0] = -n * hz[0][1] - n / b + sta / b + (a / b) * stalt;
    h[0][2] = h[2][0] = -n * hz[0][2];
    h[1][2] = h[2][1] = -n * hz[1][2];
    return h;
}

/// Score of l_q: sum f(x_i)^{1-q} d log f(x_i)/d theta.
inline Vec3 logq_score(const ParamVector& p, const Dataset& data, double q) {
    const Distribution dist(p);
    Vec3 acc{0.0, 0.0, 0.0};
    for (double x : data.values) {
        const double w = std::exp((1.0 - q) * dist.log_pdf(x));
        const Vec3 s = score_one(p, x);
        for (int i = 0; i < 3; ++i) acc[i] += w * s[i];
    }
    return acc;
}

} // namespace bweibull
