#pragma once

// Parameter triple (alpha, beta, delta) with the cached normalization
// constant Z = 2 + delta^2 beta^2 Gamma(1+2/alpha) - 2 delta beta Gamma(1+1/alpha)
// and its first/second derivatives. Everything is computed through
// log-space ratios so tiny alpha (huge Gamma arguments) stays finite.

#include <array>
#include <cmath>
#include <stdexcept>

#include "specfun.hpp"

namespace bweibull {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

class ParamVector {
public:
    ParamVector(double alpha, double beta, double delta)
        : alpha_(alpha), beta_(beta), delta_(delta) {
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw std::domain_error("ParamVector: alpha must be positive");
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw std::domain_error("ParamVector: beta must be positive");
        if (!std::isfinite(delta))
            throw std::domain_error("ParamVector: delta must be finite");
        lg1_ = specfun::ln_gamma(1.0 + 1.0 / alpha);
        lg2_ = specfun::ln_gamma(1.0 + 2.0 / alpha);
        log_z_ = compute_log_z();
    }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double delta() const { return delta_; }
    double log_z() const { return log_z_; }
    double z() const { return std::exp(log_z_); }   // may overflow for tiny alpha; log_z is the robust handle
    double lgamma1() const { return lg1_; }         // log Gamma(1+1/alpha)
    double lgamma2() const { return lg2_; }         // log Gamma(1+2/alpha)

    // Bounded ratios (see compute_log_z proof sketch): |r1| <= 1+sqrt(2), 0 <= r2 <= |r1|*2+3.
    double r1() const { return sgn(delta_) * std::exp(std::log(std::fabs(delta_) * beta_ + tiny) + lg1_ - log_z_); }
    double r2() const { return std::exp(2.0 * std::log(std::fabs(delta_) * beta_ + tiny) + lg2_ - log_z_); }
    // Unbounded (legitimately explosive for tiny alpha) ratios beta^k Gamma(1+k/alpha)/Z.
    double s1() const { return std::exp(std::log(beta_) + lg1_ - log_z_); }
    double s2() const { return std::exp(2.0 * std::log(beta_) + lg2_ - log_z_); }
    double s3() const { return std::exp(3.0 * std::log(beta_) + specfun::ln_gamma(1.0 + 3.0 / alpha_) - log_z_); }

    /// grad log Z w.r.t. (alpha, beta, delta).
    Vec3 zlog_gradient() const {
        const double a = alpha_;
        const double p1 = specfun::digamma(1.0 + 1.0 / a);
        const double p2 = specfun::digamma(1.0 + 2.0 / a);
        const double R1 = r1(), R2 = r2(), S1 = s1(), S2 = s2();
        return {(-2.0 * p2 * R2 + 2.0 * p1 * R1) / (a * a),
                (2.0 * R2 - 2.0 * R1) / beta_,
                2.0 * delta_ * S2 - 2.0 * S1};
    }

    /// hess log Z (symmetric).
    Mat3 zlog_hessian() const {
        const double a = alpha_, b = beta_, d = delta_;
        const double p1 = specfun::digamma(1.0 + 1.0 / a);
        const double p2 = specfun::digamma(1.0 + 2.0 / a);
        const double q1 = specfun::trigamma(1.0 + 1.0 / a);
        const double q2 = specfun::trigamma(1.0 + 2.0 / a);
        const double R1 = r1(), R2 = r2(), S1 = s1(), S2 = s2();
        const Vec3 g = zlog_gradient();
        // (1/Z) d2Z entries first
        const double zaa = (4.0 / (a * a * a)) * (p2 * R2 - p1 * R1)
                         + (1.0 / (a * a * a * a)) * (4.0 * (p2 * p2 + q2) * R2 - 2.0 * (p1 * p1 + q1) * R1);
        const double zbb = (2.0 / (b * b)) * R2;
        const double zdd = 2.0 * S2;
        const double zab = (-4.0 * p2 * R2 + 2.0 * p1 * R1) / (a * a * b);
        const double zad = (-4.0 * p2 * d * S2 + 2.0 * p1 * S1) / (a * a);
        const double zbd = (4.0 * d * S2 - 2.0 * S1) / b;
        Mat3 h{};
        h[0][0] = zaa - g[0] * g[0];
        h[1][1] = zbb - g[1] * g[1];
        h[2][2] = zdd - g[2] * g[2];
        h[0][1] = h[1][0] = zab - g[0] * g[1];
        h[0][2] = h[2][0] = zad - g[0] * g[2];
        h[1][2] = h[2][1] = zbd - g[1] * g[2];
        return h;
    }

private:
    static double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }
    static constexpr double tiny = 1e-320;  // keeps log() finite at delta = 0; the exp() is then 0 anyway

    double compute_log_z() const {
        // Z = 2 + e^A - sign(delta) e^B,  A = 2 log|delta|beta + lgamma2, B = log(2|delta|beta) + lgamma1.
        // Z >= 1 always (Z = E[1+(1-delta Y)^2] over Weibull), and whenever the
        // exp terms are large the positive A-term dominates, so the factored
        // evaluation below never cancels catastrophically.
        const double ad = std::fabs(delta_);
        if (ad == 0.0) return std::log(2.0);
        const double A = 2.0 * std::log(ad * beta_) + lg2_;
        const double B = std::log(2.0 * ad * beta_) + lg1_;
        const double M = std::max({A, B, std::log(2.0)});
        const double inner = 2.0 * std::exp(-M) + std::exp(A - M) - sgn(delta_) * std::exp(B - M);
        return M + std::log(inner);
    }

    double alpha_, beta_, delta_;
    double lg1_, lg2_, log_z_;
};

} // namespace bweibull
