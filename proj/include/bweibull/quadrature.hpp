#pragma once

// Adaptive Gauss-Kronrod (G7,K15) integration. Used as the paper-independent
// oracle for every expectation and as the primary path for the quantities
// that have no workable closed form (E_dd, q-Fisher entries, entropies).

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace bweibull::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

namespace detail {

// K15 abscissae (positive half) and weights; G7 weights interleave at odd indices.
inline constexpr std::array<double, 8> xk = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wk = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void kronrod15(const F& f, double a, double b, double& valk, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * xk[i];
        double fv;
        if (i == 7) {
            fv = f(c);
            resk += wk[7] * fv;
            resg += wg[3] * fv;
        } else {
            const double f1 = f(c - dx), f2 = f(c + dx);
            resk += wk[i] * (f1 + f2);
            if (i % 2 == 1) resg += wg[i / 2] * (f1 + f2);
        }
    }
    valk = resk * h;
    err = std::fabs((resk - resg) * h);
}

template <class F>
inline void adapt(const F& f, double a, double b, double tol, int depth, long& budget,
                  double& acc, double& erracc, bool& ok) {
    double v, e;
    kronrod15(f, a, b, v, e);
    --budget;
    if (e <= tol || depth >= 60 || budget <= 0
        || (b - a) < 1e-15 * (std::fabs(a) + std::fabs(b) + 1e-300)) {
        acc += v;
        erracc += e;
        if (e > tol && (depth >= 60 || budget <= 0)) ok = false;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth + 1, budget, acc, erracc, ok);
    adapt(f, m, b, 0.5 * tol, depth + 1, budget, acc, erracc, ok);
}

} // namespace detail

/// Adaptive integral of f over [a,b] to absolute tolerance abs_tol.
/// A node budget (~max panels) keeps pathological integrands from hanging.
template <class F>
inline Result integrate(const F& f, double a, double b, double abs_tol = 1e-10, long budget = 40000) {
    Result r;
    if (a == b) return r;
    bool ok = true;
    detail::adapt(f, a, b, abs_tol, 0, budget, r.value, r.error, ok);
    r.converged = ok && std::isfinite(r.value);
    return r;
}

/// Integral of f over [a, inf): adaptive on [a, a+hint], then geometrically
/// growing segments until two consecutive segments fall below the tail cut.
template <class F>
inline Result integrate_to_inf(const F& f, double a, double hint, double abs_tol = 1e-10) {
    Result total;
    if (!(hint > 0.0) || !std::isfinite(hint)) hint = 1.0;
    Result head = integrate(f, a, a + hint, abs_tol * 0.5);
    total = head;
    double lo = a + hint, len = hint;
    const double tail_cut = std::max(abs_tol * 1e-3, 1e-300);
    int quiet = 0;
    for (int seg = 0; seg < 90 && quiet < 2; ++seg) {
        Result piece = integrate(f, lo, lo + len, abs_tol * 0.25);
        total.value += piece.value;
        total.error += piece.error;
        total.converged = total.converged && piece.converged;
        quiet = std::fabs(piece.value) < tail_cut ? quiet + 1 : 0;
        lo += len;
        len *= 2.0;
        if (lo > 1e300) break;
    }
    total.converged = total.converged && std::isfinite(total.value);
    return total;
}

} // namespace bweibull::quad
