#pragma once

// Classical and q-deformed Fisher information (per observation) and the
// standard-error convention used in the fitted-parameter tables.
// FI = E[score score^T] = -E[hessian]; PSD is asserted by the tests.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>

#include "distribution.hpp"
#include "likelihood.hpp"
#include "quadrature.hpp"

namespace bweibull {

enum class FisherMethod { Analytic, Quadrature, PseudoInverse };

/// Per-observation classical FI = -E[hessian of log f]. The (a,a), (a,b), (b,b)
/// and Z-only entries use closed forms; E_dd's rational expectation is quadrature.
inline Eigen::Matrix3d fisher_information(const ParamVector& p) {
    const double a = p.alpha(), b = p.beta(), d = p.delta();
    const Distribution dist(p);
    const Mat3 hz = p.zlog_hessian();

    const double la = a * std::log(b);
    const double exa = dist.e_xalpha();
    const double exal = dist.e_xalpha_log();
    const double exal2 = dist.e_xalpha_log2();
    const double lb = std::log(b);
    // E[T^a log^k T], T = X/beta
    const double Et = exa * std::exp(-la);
    const double Etl = (exal - lb * exa) * std::exp(-la);
    const double Etl2 = (exal2 - 2.0 * lb * exal + lb * lb * exa) * std::exp(-la);

    // E of the delta-direction second derivative of log[1+(1-dX)^2]
    const double edd = dist.expect([&](double x) {
        const double od = 1.0 - d * x;
        const double den = 1.0 + od * od;
        return 2.0 * x * x * (1.0 - od * od) / (den * den);
    }, 1e-11);

    Eigen::Matrix3d E;   // E[hessian of log f]
    E(0, 0) = -hz[0][0] - 1.0 / (a * a) - Etl2;
    E(1, 1) = -hz[1][1] + a / (b * b) - (a * (a + 1.0) / (b * b)) * Et;
    E(2, 2) = -hz[2][2] + edd;
    E(0, 1) = E(1, 0) = -hz[0][1] - 1.0 / b + Et / b + (a / b) * Etl;
    E(0, 2) = E(2, 0) = -hz[0][2];
    E(1, 2) = E(2, 1) = -hz[1][2];
    return -E;
}

/// Per-observation q-FI: int (dlogf)(dlogf)^T f^{2-q} dx. Reduces to the
/// classical matrix at q = 1.
inline Eigen::Matrix3d q_fisher_information(const ParamVector& p, double q) {
    const Distribution dist(p);
    Eigen::Matrix3d F = Eigen::Matrix3d::Zero();
    const double upper = dist.safe_upper();
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            auto integrand = [&](double x) {
                const double lp = dist.log_pdf(x);
                if (!std::isfinite(lp)) return 0.0;
                const Vec3 s = score_one(p, x);
                return s[i] * s[j] * std::exp((2.0 - q) * lp);
            };
            auto head = quad::integrate(integrand, 0.0, upper, 5e-9);
            auto tail = quad::integrate_to_inf(integrand, upper, upper, 5e-9);
            if (!head.converged || !tail.converged)
                throw std::runtime_error("q_fisher_information: quadrature did not converge");
            F(i, j) = F(j, i) = head.value + tail.value;
        }
    }
    return F;
}

struct StandardErrors {
    std::array<double, 3> se{};
    FisherMethod method = FisherMethod::Analytic;
    bool finite = true;
};

/// Table convention: Var(theta-hat) = (n * fisher)^{-1} where `fisher` is the
/// sample information matrix attached to a fit (n * per-observation FI).
/// Falls back to the eigenvalue pseudo-inverse when ill-conditioned.
inline StandardErrors standard_errors(const Eigen::Matrix3d& fisher, double n) {
    StandardErrors out;
    const Eigen::Matrix3d M = n * fisher;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(M);
    const auto& ev = es.eigenvalues();
    const double emax = ev.cwiseAbs().maxCoeff();
    const double emin = ev.cwiseAbs().minCoeff();
    Eigen::Matrix3d inv;
    if (!(emin > 0.0) || ev.minCoeff() <= 0.0 || emax / emin > 1e12) {
        out.method = FisherMethod::PseudoInverse;
        Eigen::Vector3d invev;
        for (int i = 0; i < 3; ++i)
            invev(i) = std::fabs(ev(i)) > 1e-12 * emax ? 1.0 / ev(i) : 0.0;
        inv = es.eigenvectors() * invev.asDiagonal() * es.eigenvectors().transpose();
    } else {
        inv = M.inverse();
    }
    for (int i = 0; i < 3; ++i) {
        const double v = inv(i, i);
        if (v < 0.0 || !std::isfinite(v)) {
            out.se[i] = std::numeric_limits<double>::quiet_NaN();
            out.finite = false;
        } else {
            out.se[i] = std::sqrt(v);
        }
    }
    return out;
}

} // namespace bweibull
