#pragma once

// Goodness-of-fit: Kolmogorov-Smirnov and Cramer-von Mises in two
// conventions. Standard = the textbook one-sample statistics. PaperCompat =
// two-sample tests between the vector of ecdf values and the vector of
// fitted-CDF values, with CVM p-value = exp(-T)/6; statistically unusual but
// required to reproduce the published tables bit-for-bit.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "quadrature.hpp"
#include "specfun.hpp"

namespace bweibull {

enum class GofConvention { Standard, PaperCompat };

struct GofResult {
    double ks_stat = 0.0;
    double ks_pvalue = 1.0;
    double cvm_stat = 0.0;
    double cvm_pvalue = 1.0;
    GofConvention convention = GofConvention::Standard;
};

/// Right-continuous ECDF; value k/n at the k-th order statistic (ties jump k/n).
class Ecdf {
public:
    explicit Ecdf(std::vector<double> data) : sorted_(std::move(data)) {
        if (sorted_.empty()) throw std::invalid_argument("Ecdf: empty data");
        std::sort(sorted_.begin(), sorted_.end());
    }

    double operator()(double x) const {
        const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
        return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
    }

    /// fun.ecdf(sort(x)): ECDF evaluated at the sorted sample itself.
    std::vector<double> values_at_points() const {
        std::vector<double> v(sorted_.size());
        for (std::size_t i = 0; i < sorted_.size(); ++i) v[i] = (*this)(sorted_[i]);
        return v;
    }

    const std::vector<double>& sorted() const { return sorted_; }

private:
    std::vector<double> sorted_;
};

/// Asymptotic Kolmogorov tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
inline double kolmogorov_tail(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k & 1) ? term : -term;
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

namespace detail {

// Modified Bessel K_{1/4}(z), scaled by e^z, via the integral representation.
inline double bessel_k_quarter_scaled(double z) {
    const double tmax = std::acosh(std::max(2.0, 750.0 / z + 1.0));
    auto integrand = [&](double t) {
        return std::exp(-z * (std::cosh(t) - 1.0)) * std::cosh(0.25 * t);
    };
    return quad::integrate(integrand, 0.0, tmax, 1e-12).value;
}

// Limiting CDF of the one-sample CVM statistic (Csorgo-Faraway series).
inline double cvm_limit_cdf(double x) {
    if (x <= 0.0) return 0.0;
    double tot = 0.0;
    double cb = 1.0;   // C(2k,k)/4^k
    for (int k = 0; k < 8; ++k) {
        const double y = 4.0 * k + 1.0;
        const double qa = y * y / (16.0 * x);
        if (qa < 350.0)
            tot += cb / (M_PI * std::sqrt(x)) * std::sqrt(y) * std::exp(-2.0 * qa) * bessel_k_quarter_scaled(qa);
        cb *= (2.0 * k + 1.0) / (2.0 * k + 2.0);
    }
    return std::clamp(tot, 0.0, 1.0);
}

// Midranks of a sorted vector (average rank within tied blocks), 1-based.
inline std::vector<double> midranks_sorted(const std::vector<double>& v) {
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
        const double mr = 0.5 * static_cast<double>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) r[k] = mr;
        i = j + 1;
    }
    return r;
}

// Two-sample KS distance between the empirical CDFs of two value vectors.
inline double ks_two_sample_stat(std::vector<double> s1, std::vector<double> s2) {
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    const double n = static_cast<double>(s1.size()), m = static_cast<double>(s2.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < s1.size() && j < s2.size()) {
        const double v = std::min(s1[i], s2[j]);
        while (i < s1.size() && s1[i] <= v) ++i;
        while (j < s2.size() && s2[j] <= v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return d;
}

// Anderson's U-form two-sample CVM with midranks on both the within-sample
// and pooled ranks; T = 0 exactly for identical samples.
inline double cvm_two_sample_stat(std::vector<double> s1, std::vector<double> s2) {
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    const std::size_t n = s1.size(), m = s2.size();
    std::vector<double> pooled;
    pooled.reserve(n + m);
    pooled.insert(pooled.end(), s1.begin(), s1.end());
    pooled.insert(pooled.end(), s2.begin(), s2.end());
    std::vector<std::size_t> order(n + m);
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pooled[a] < pooled[b];
    });
    std::vector<double> pooled_rank(n + m);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double mr = 0.5 * static_cast<double>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) pooled_rank[order[k]] = mr;
        i = j + 1;
    }
    const std::vector<double> r1 = midranks_sorted(s1);
    const std::vector<double> r2 = midranks_sorted(s2);
    double somN = 0.0, somM = 0.0;
    for (std::size_t k = 0; k < n; ++k) somN += (r1[k] - pooled_rank[k]) * (r1[k] - pooled_rank[k]);
    for (std::size_t k = 0; k < m; ++k) somM += (r2[k] - pooled_rank[n + k]) * (r2[k] - pooled_rank[n + k]);
    const double nd = static_cast<double>(n), md = static_cast<double>(m);
    const double U = nd * somN + md * somM;
    return U / (nd * md * (nd + md)) - (4.0 * nd * md - 1.0) / (6.0 * (nd + md));
}

} // namespace detail

/// KS test of data against a fitted CDF.
/// Standard: one-sample D with the asymptotic Kolmogorov p-value.
/// PaperCompat: two-sample D between ecdf values and fitted-CDF values.
template <class CdfFn>
inline GofResult ks_test(const std::vector<double>& data, const CdfFn& cdf, GofConvention conv) {
    if (data.empty()) throw std::invalid_argument("ks_test: empty data");
    Ecdf e(data);
    const auto& xs = e.sorted();
    const double n = static_cast<double>(xs.size());
    std::vector<double> F(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        F[i] = cdf(xs[i]);
        if (i > 0 && F[i] < F[i - 1] - 1e-12)
            throw std::runtime_error("ks_test: fitted cdf is not monotone on the sample");
    }
    GofResult r;
    r.convention = conv;
    if (conv == GofConvention::Standard) {
        double d = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            d = std::max(d, (i + 1.0) / n - F[i]);
            d = std::max(d, F[i] - static_cast<double>(i) / n);
        }
        r.ks_stat = d;
        r.ks_pvalue = kolmogorov_tail(std::sqrt(n) * d);
    } else {
        const std::vector<double> ev = e.values_at_points();
        const double d = detail::ks_two_sample_stat(ev, F);
        r.ks_stat = d;
        r.ks_pvalue = kolmogorov_tail(d * std::sqrt(n * n / (2.0 * n)));
    }
    return r;
}

/// CVM test of data against a fitted CDF.
/// Standard: T = 1/(12n) + sum (F(x_(i)) - (2i-1)/(2n))^2, asymptotic p-value.
/// PaperCompat: two-sample T between ecdf values and fitted-CDF values,
/// p-value = exp(-T)/6.
template <class CdfFn>
inline GofResult cvm_test(const std::vector<double>& data, const CdfFn& cdf, GofConvention conv) {
    if (data.empty()) throw std::invalid_argument("cvm_test: empty data");
    Ecdf e(data);
    const auto& xs = e.sorted();
    const double n = static_cast<double>(xs.size());
    std::vector<double> F(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) F[i] = cdf(xs[i]);
    GofResult r;
    r.convention = conv;
    if (conv == GofConvention::Standard) {
        double t = 1.0 / (12.0 * n);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double z = F[i] - (2.0 * (i + 1.0) - 1.0) / (2.0 * n);
            t += z * z;
        }
        r.cvm_stat = t;
        r.cvm_pvalue = 1.0 - detail::cvm_limit_cdf(t);
    } else {
        const double t = detail::cvm_two_sample_stat(e.values_at_points(), F);
        r.cvm_stat = t;
        r.cvm_pvalue = std::exp(-t) / 6.0;
    }
    return r;
}

/// Both statistics in one convention.
template <class CdfFn>
inline GofResult gof_tests(const std::vector<double>& data, const CdfFn& cdf, GofConvention conv) {
    GofResult r = ks_test(data, cdf, conv);
    const GofResult c = cvm_test(data, cdf, conv);
    r.cvm_stat = c.cvm_stat;
    r.cvm_pvalue = c.cvm_pvalue;
    return r;
}

} // namespace bweibull
