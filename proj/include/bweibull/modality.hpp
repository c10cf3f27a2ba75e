#pragma once

// Uni/bimodality analysis: mode-equation residual, the alpha=2 quartic
// discriminant, and a classifier that applies the analytic special cases
// where their preconditions hold and an authoritative numeric root scan
// everywhere else.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "distribution.hpp"

namespace bweibull {

enum class Modality { Bimodal, Unimodal, Decreasing, Indeterminate };
enum class ModalityMethod { Alpha1Rule, Alpha2Discriminant, Numeric };
enum class CriticalKind { Maximum, Minimum };

struct CriticalPoint {
    double x;
    CriticalKind kind;
};

struct QuarticCoeffs {
    double a, b, c, d, e;
};

struct ModalityReport {
    Modality classification = Modality::Indeterminate;
    std::vector<CriticalPoint> critical_points;    // strictly increasing, kinds alternate
    ModalityMethod method = ModalityMethod::Numeric;
    std::optional<double> discriminant;            // alpha = 2 only
    std::optional<QuarticCoeffs> coefficients;

    std::size_t maxima_count() const {
        std::size_t n = 0;
        for (const auto& c : critical_points)
            if (c.kind == CriticalKind::Maximum) ++n;
        return n;
    }
};

/// Stationarity residual: zero iff x > 0 is a critical point of the density.
/// sign(f'(x)) = -sign(residual).
inline double mode_equation_residual(const ParamVector& p, double x) {
    const double a = p.alpha(), b = p.beta(), d = p.delta();
    const double ba = std::pow(b, a), xa = std::pow(x, a);
    return a * d * d * xa * x * x - 2.0 * a * d * xa * x + 2.0 * a * xa
         - (a + 1.0) * ba * d * d * x * x + 2.0 * a * ba * d * x - 2.0 * (a - 1.0) * ba;
}

/// Discriminant of the alpha=2 mode quartic a x^4 + b x^3 + c x^2 + d x + e
/// with a=2 delta^2, b=-4 delta, c=4-3 beta^2 delta^2, d=4 beta^2 delta, e=-2 beta^2.
inline std::pair<double, QuarticCoeffs> quartic_discriminant(double beta, double delta) {
    const double a = 2.0 * delta * delta;
    const double b = -4.0 * delta;
    const double c = 4.0 - 3.0 * beta * beta * delta * delta;
    const double d = 4.0 * beta * beta * delta;
    const double e = -2.0 * beta * beta;
    const double D =
        256.0 * a * a * a * e * e * e - 192.0 * a * a * b * d * e * e
        - 128.0 * a * a * c * c * e * e + 144.0 * a * a * c * d * d * e
        - 27.0 * a * a * d * d * d * d + 144.0 * a * b * b * c * e * e
        - 6.0 * a * b * b * d * d * e - 80.0 * a * b * c * c * d * e
        + 18.0 * a * b * c * d * d * d + 16.0 * a * c * c * c * c * e
        - 4.0 * a * c * c * c * d * d - 27.0 * b * b * b * b * e * e
        + 18.0 * b * b * b * c * d * e - 4.0 * b * b * b * d * d * d
        - 4.0 * b * b * c * c * c * e + b * b * c * c * d * d;
    return {D, {a, b, c, d, e}};
}

namespace detail {

inline double refine_root(const ParamVector& p, double lo, double hi) {
    double flo = mode_equation_residual(p, lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = mode_equation_residual(p, mid);
        if (fm == 0.0 || hi - lo < 1e-14 * (std::fabs(mid) + 1e-300)) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

inline ModalityReport classify_numeric(const Distribution& dist) {
    const ParamVector& p = dist.params();
    ModalityReport rep;
    rep.method = ModalityMethod::Numeric;

    double lo = dist.quantile(1e-6), hi = dist.quantile(1.0 - 1e-6);
    lo = std::max(lo, 1e-300);
    const double llo = std::log(lo), lhi = std::log(hi);
    constexpr int n = 2048;

    std::vector<double> roots;
    std::vector<bool> is_max;   // residual crossing - -> + means a density maximum
    double xprev = std::exp(llo);
    double rprev = mode_equation_residual(p, xprev);
    for (int i = 1; i < n; ++i) {
        const double x = std::exp(llo + (lhi - llo) * i / (n - 1.0));
        const double r = mode_equation_residual(p, x);
        if ((rprev < 0.0) != (r < 0.0) && rprev != 0.0) {
            roots.push_back(refine_root(p, xprev, x));
            is_max.push_back(rprev < 0.0);
        }
        xprev = x;
        rprev = r;
    }

    // merge tangential near-duplicates
    const double merge_tol = 1e-8 * p.beta();
    std::vector<double> mroots;
    std::vector<bool> mmax;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (!mroots.empty() && roots[i] - mroots.back() < merge_tol) {
            if (mmax.back() != is_max[i]) {
                rep.classification = Modality::Indeterminate;
                return rep;
            }
            continue;
        }
        mroots.push_back(roots[i]);
        mmax.push_back(is_max[i]);
    }

    for (std::size_t i = 0; i < mroots.size(); ++i)
        rep.critical_points.push_back({mroots[i], mmax[i] ? CriticalKind::Maximum : CriticalKind::Minimum});

    const std::size_t maxima = rep.maxima_count();
    if (maxima >= 2)
        rep.classification = maxima == 2 ? Modality::Bimodal : Modality::Indeterminate;
    else if (maxima == 1)
        rep.classification = Modality::Unimodal;
    else
        rep.classification = Modality::Decreasing;
    return rep;
}

} // namespace detail

/// Classify the density as bimodal / unimodal / strictly decreasing.
inline ModalityReport classify(const Distribution& dist) {
    const ParamVector& p = dist.params();
    const double a = p.alpha(), b = p.beta(), d = p.delta();

    if (a == 2.0) {
        auto [D, coeffs] = quartic_discriminant(b, d);
        if (d > 0.0) {
            const double w2 = b * b * d * d;
            ModalityReport rep = detail::classify_numeric(dist);
            rep.discriminant = D;
            rep.coefficients = coeffs;
            // Analytic cases where the stated preconditions hold; the numeric
            // scan supplies the critical points either way.
            if (D > 0.0 && w2 > 13.0 / 12.0 && w2 < 4.0 / 3.0) {
                rep.classification = Modality::Bimodal;
                rep.method = ModalityMethod::Alpha2Discriminant;
            } else if (D < 0.0 && w2 <= 4.0 / 3.0) {
                rep.classification = Modality::Unimodal;
                rep.method = ModalityMethod::Alpha2Discriminant;
            } else if (D == 0.0 && w2 == 4.0 / 3.0) {
                rep.classification = Modality::Unimodal;
                rep.method = ModalityMethod::Alpha2Discriminant;
            }
            return rep;
        }
        ModalityReport rep = detail::classify_numeric(dist);
        rep.discriminant = D;
        rep.coefficients = coeffs;
        return rep;
    }

    if (a == 1.0) {
        ModalityReport rep = detail::classify_numeric(dist);
        if (d < -1.0 / b) {
            rep.classification = Modality::Unimodal;   // unique interior maximum
            rep.method = ModalityMethod::Alpha1Rule;
        } else if (d > 0.0) {
            // unimodal or strictly decreasing; numeric result already one of those
            if (rep.classification == Modality::Unimodal || rep.classification == Modality::Decreasing)
                rep.method = ModalityMethod::Alpha1Rule;
        }
        return rep;
    }

    return detail::classify_numeric(dist);
}

} // namespace bweibull
