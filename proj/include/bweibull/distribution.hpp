#pragma once

// BWeibull(alpha, beta, delta): density, distribution, reliability,
// quantile, sampling, moments, MGF/CF, tail rate, and the logarithmic
// expectations that feed Fisher information.
//
//   f(x) = alpha/(beta Z) * [1+(1-delta x)^2] * (x/beta)^(alpha-1) * exp(-(x/beta)^alpha)

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "params.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "specfun.hpp"

namespace bweibull {

enum class TailRate { Zero, Finite, Infinite };

struct TailRateResult {
    TailRate kind;
    double rate;   // 0, 1/beta, or +inf
};

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TailEvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Distribution {
public:
    explicit Distribution(ParamVector params) : p_(params) {}
    Distribution(double alpha, double beta, double delta) : p_(alpha, beta, delta) {}

    const ParamVector& params() const { return p_; }
    double alpha() const { return p_.alpha(); }
    double beta() const { return p_.beta(); }
    double delta() const { return p_.delta(); }

    /// log f(x); boundary x=0 follows the alpha-case limits (+inf / finite / -inf).
    double log_pdf(double x) const {
        if (x < 0.0 || !std::isfinite(x)) throw std::domain_error("log_pdf: requires x >= 0");
        const double a = p_.alpha(), b = p_.beta(), d = p_.delta();
        if (x == 0.0) {
            if (a < 1.0) return std::numeric_limits<double>::infinity();
            if (a > 1.0) return -std::numeric_limits<double>::infinity();
            return std::log(2.0) - std::log(b) - p_.log_z();
        }
        const double t = x / b;
        const double u = std::pow(t, a);
        const double od = 1.0 - d * x;
        return std::log(a) - std::log(b) - p_.log_z() + std::log1p(od * od)
             + (a - 1.0) * std::log(t) - u;
    }

    double pdf(double x) const { return std::exp(log_pdf(x)); }

    /// Closed-form CDF through regularized incomplete gammas; stable in log space.
    double cdf(double x) const {
        if (x < 0.0 || !std::isfinite(x)) throw std::domain_error("cdf: requires x >= 0");
        if (x == 0.0) return 0.0;
        const double a = p_.alpha(), d = p_.delta();
        const double u = std::pow(x / p_.beta(), a);
        const double od = 1.0 - d * x;
        const double bracket = 1.0 + od * od;
        const double v = std::exp(std::log(2.0) - p_.log_z())                 // 2/Z
                       - bracket * std::exp(-u - p_.log_z())                  // [1+(1-dx)^2] e^-u / Z
                       - 2.0 * p_.r1() * specfun::gamma_p(1.0 / a, u)
                       + p_.r2() * specfun::gamma_p(2.0 / a, u);
        return std::min(1.0, std::max(0.0, v));
    }

    /// Reliability R(x) = 1 - F(x), evaluated from its own (upper-gamma) closed form.
    double survival(double x) const {
        if (x < 0.0 || !std::isfinite(x)) throw std::domain_error("survival: requires x >= 0");
        if (x == 0.0) return 1.0;
        const double a = p_.alpha(), d = p_.delta();
        const double u = std::pow(x / p_.beta(), a);
        const double od = 1.0 - d * x;
        const double v = (1.0 + od * od) * std::exp(-u - p_.log_z())
                       - 2.0 * p_.r1() * specfun::gamma_q(1.0 / a, u)
                       + p_.r2() * specfun::gamma_q(2.0 / a, u);
        return std::min(1.0, std::max(0.0, v));
    }

    double hazard(double t) const {
        const double s = survival(t);
        if (s < 1e-300) throw TailEvaluationError("hazard: survival underflow in the far tail");
        return pdf(t) / s;
    }

    /// E[1_{X>=t} X] in closed form (upper incomplete gammas).
    double partial_expectation(double t) const {
        if (t < 0.0 || !std::isfinite(t)) throw std::domain_error("partial_expectation: requires t >= 0");
        const double a = p_.alpha(), d = p_.delta();
        const double u = t == 0.0 ? 0.0 : std::pow(t / p_.beta(), a);
        const double od = 1.0 - d * t;
        return t * (1.0 + od * od) * std::exp(-u - p_.log_z())
             + 2.0 * p_.s1() * specfun::gamma_q(1.0 / a, u)
             - 2.0 * d * p_.s2() * specfun::gamma_q(2.0 / a, u)
             + d * d * p_.s3() * specfun::gamma_q(3.0 / a, u);
    }

    /// Mean residual life E[X - t | X >= t].
    double mrl(double t) const {
        const double s = survival(t);
        if (s < 1e-300) throw TailEvaluationError("mrl: survival underflow in the far tail");
        return partial_expectation(t) / s - t;
    }

    /// Inverse CDF by bracketed Newton; |cdf(result) - p| <= ~1e-12.
    double quantile(double p) const {
        if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: requires p in (0,1)");
        const double a = p_.alpha(), b = p_.beta();
        double hi = b * std::pow(-std::log1p(-p), 1.0 / a);
        if (!(hi > 0.0) || !std::isfinite(hi)) hi = b;
        int grow = 0;
        while (cdf(hi) < p) {
            hi *= 2.0;
            if (++grow > 400) throw std::runtime_error("quantile: bracket growth failed");
        }
        double lo = 0.0;
        double x = 0.5 * hi;
        for (int it = 0; it < 200; ++it) {
            const double c = cdf(x);
            if (c > p) hi = x; else lo = x;
            const double f = pdf(x);
            double step = f > 0.0 && std::isfinite(f) ? (c - p) / f : 0.0;
            double xn = x - step;
            if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);   // safeguard: bisect
            if (std::fabs(c - p) < 1e-13 || hi - lo < 1e-15 * (hi + 1.0)) return x;
            x = xn;
        }
        return x;
    }

    /// n i.i.d. draws by inverse CDF; deterministic given the seed.
    std::vector<double> sample(std::uint64_t seed, std::size_t n) const {
        Rng rng(seed);
        return sample(rng, n);
    }

    std::vector<double> sample(Rng& rng, std::size_t n) const {
        std::vector<double> out(n);
        for (auto& v : out) v = quantile(rng.uniform01());
        return out;
    }

    /// E[X^r], r > -alpha.
    double raw_moment(double r) const {
        const double a = p_.alpha(), b = p_.beta(), d = p_.delta();
        if (!(r > -a)) throw std::domain_error("raw_moment: requires r > -alpha");
        const double lb = std::log(b);
        const double t0 = std::exp(r * lb + specfun::ln_gamma(1.0 + r / a) + std::log(2.0) - p_.log_z());
        if (d == 0.0) return t0;
        const double lad = std::log(std::fabs(d));
        const double t2 = std::exp(r * lb + 2.0 * (lad + lb) + specfun::ln_gamma(1.0 + (r + 2.0) / a) - p_.log_z());
        const double t1 = std::exp(r * lb + lad + lb + std::log(2.0) + specfun::ln_gamma(1.0 + (r + 1.0) / a) - p_.log_z());
        return t0 + t2 - (d < 0.0 ? -t1 : t1);
    }

    double mean() const { return raw_moment(1.0); }
    double variance() const {
        const double m = mean();
        return raw_moment(2.0) - m * m;
    }
    double skewness() const {
        const double m = mean(), v = variance();
        return (raw_moment(3.0) - 3.0 * m * v - m * m * m) / std::pow(v, 1.5);
    }
    double kurtosis() const {
        const double m = mean(), v = variance();
        const double m2 = raw_moment(2.0), m3 = raw_moment(3.0), m4 = raw_moment(4.0);
        const double c4 = m4 - 4.0 * m * m3 + 6.0 * m * m * m2 - 3.0 * m * m * m * m;
        return c4 / (v * v);
    }

    /// MGF by the moment series; alpha >= 1 (|t| < 1/beta when alpha == 1).
    double mgf(double t) const {
        check_mgf_region(t);
        if (t == 0.0) return 1.0;
        double sum = 0.0;
        const double llt = std::log(std::fabs(t));
        for (int n = 0; n < 500; ++n) {
            const double term = sgnpow(t, n) * std::exp(n * llt - specfun::ln_gamma(n + 1.0)) * raw_moment(static_cast<double>(n));
            sum += term;
            if (n > 4 && std::fabs(term) < 1e-14 * std::fabs(sum)) return sum;
        }
        throw SeriesError("mgf: series did not converge within 500 terms");
    }

    /// Characteristic function, alpha >= 1.
    std::complex<double> cf(double t) const {
        if (p_.alpha() < 1.0) throw std::domain_error("cf: defined for alpha >= 1");
        if (t == 0.0) return {1.0, 0.0};
        std::complex<double> sum = 0.0, it(0.0, t);
        std::complex<double> po = 1.0;
        for (int n = 0; n < 500; ++n) {
            const std::complex<double> term = po * std::exp(-specfun::ln_gamma(n + 1.0)) * raw_moment(static_cast<double>(n));
            sum += term;
            if (n > 4 && std::abs(term) < 1e-14 * std::abs(sum)) return sum;
            po *= it;
        }
        throw SeriesError("cf: series did not converge within 500 terms");
    }

    TailRateResult tail_rate() const {
        const double a = p_.alpha();
        if (a < 1.0) return {TailRate::Zero, 0.0};
        if (a == 1.0) return {TailRate::Finite, 1.0 / p_.beta()};
        return {TailRate::Infinite, std::numeric_limits<double>::infinity()};
    }

    /// E[log X] (polygamma closed form).
    double expected_log() const {
        const double a = p_.alpha(), b = p_.beta();
        const double lb = std::log(b);
        const double t0 = 2.0 * (lb - specfun::euler_gamma / a) * std::exp(-p_.log_z());
        const double t1 = -2.0 * p_.r1() * (lb + specfun::digamma(1.0 + 1.0 / a) / a);
        const double t2 = p_.r2() * (lb + specfun::digamma(1.0 + 2.0 / a) / a);
        return t0 + t1 + t2;
    }

    /// E[X^alpha]: beta^alpha [2 - 2 d b G(2+1/a) + d^2 b^2 G(2+2/a)] / Z.
    double e_xalpha() const {
        const double a = p_.alpha(), b = p_.beta(), d = p_.delta();
        const double la = a * std::log(b);
        double v = 2.0 * std::exp(la - p_.log_z());
        if (d != 0.0) {
            const double m = std::log(std::fabs(d) * b);
            v -= sgn(d) * 2.0 * std::exp(la + m + specfun::ln_gamma(2.0 + 1.0 / a) - p_.log_z());
            v += std::exp(la + 2.0 * m + specfun::ln_gamma(2.0 + 2.0 / a) - p_.log_z());
        }
        return v;
    }

    /// E[X^alpha log X].
    double e_xalpha_log() const {
        const double a = p_.alpha(), b = p_.beta(), d = p_.delta();
        const double lb = std::log(b), la = a * lb;
        double v = 2.0 * (lb + (1.0 - specfun::euler_gamma) / a) * std::exp(la - p_.log_z());
        if (d != 0.0) {
            const double m = std::log(std::fabs(d) * b);
            v -= sgn(d) * 2.0 * (lb + specfun::digamma(2.0 + 1.0 / a) / a)
               * std::exp(la + m + specfun::ln_gamma(2.0 + 1.0 / a) - p_.log_z());
            v += (lb + specfun::digamma(2.0 + 2.0 / a) / a)
               * std::exp(la + 2.0 * m + specfun::ln_gamma(2.0 + 2.0 / a) - p_.log_z());
        }
        return v;
    }

    /// E[X^alpha log^2 X].
    double e_xalpha_log2() const {
        const double a = p_.alpha(), b = p_.beta(), d = p_.delta();
        const double lb = std::log(b), la = a * lb;
        auto block = [&](double shift_num) {
            // polylog block for E[Y^s log^2 Y] at s = alpha + shift_num
            const double arg = 1.0 + (a + shift_num) / a;
            const double p0 = specfun::digamma(arg), p1t = specfun::trigamma(arg);
            return lb * lb + 2.0 * lb * p0 / a + (p0 * p0 + p1t) / (a * a);
        };
        double v = 2.0 * block(0.0) * std::exp(la - p_.log_z());   // Gamma(2) = 1
        if (d != 0.0) {
            const double m = std::log(std::fabs(d) * b);
            v -= sgn(d) * 2.0 * block(1.0)
               * std::exp(la + m + specfun::ln_gamma(2.0 + 1.0 / a) - p_.log_z());
            v += block(2.0)
               * std::exp(la + 2.0 * m + specfun::ln_gamma(2.0 + 2.0 / a) - p_.log_z());
        }
        return v;
    }

    /// Quadrature oracle: E[g(X)] by adaptive Gauss-Kronrod over the bulk plus
    /// geometric tail segments; abs tolerance as given. The x^(alpha-1)
    /// endpoint singularity is removed by a power substitution.
    template <class G>
    double expect(const G& g, double abs_tol = 1e-10) const {
        auto integrand = [&](double x) {
            const double lp = log_pdf(x);
            if (!std::isfinite(lp)) return 0.0;
            return g(x) * std::exp(lp);
        };
        return integrate_support_sing(integrand, p_.alpha() - 1.0, abs_tol);
    }

    /// Integral of h(x) over the support (same segmentation as expect()).
    template <class H>
    double integrate_support(const H& h, double abs_tol = 1e-10) const {
        return integrate_support_sing(h, p_.alpha() - 1.0, abs_tol);
    }

    /// Same, for an integrand behaving like x^sing_p near 0 (sing_p > -1).
    template <class H>
    double integrate_support_sing(const H& h, double sing_p, double abs_tol = 1e-10) const {
        if (sing_p <= -1.0 + 1e-9) return std::numeric_limits<double>::infinity();
        const double upper = safe_upper();
        const double head_end = std::min(upper * 0.5, p_.beta());
        double head;
        if (sing_p < -0.05) {
            // x = head_end * y^m turns x^p dx into ~ y^{m(p+1)-1} dy, smooth for m(p+1) >= 2
            const double m = std::clamp(std::ceil(2.5 / (1.0 + sing_p)), 2.0, 1e8);
            auto ty = [&](double y) {
                const double x = head_end * std::pow(y, m);
                if (x <= 0.0) return 0.0;
                return h(x) * head_end * m * std::pow(y, m - 1.0);
            };
            head = quad::integrate(ty, 0.0, 1.0, abs_tol * 0.25).value;
        } else {
            head = quad::integrate(h, 0.0, head_end, abs_tol * 0.25).value;
        }
        auto bulk = quad::integrate(h, head_end, upper, abs_tol * 0.25);
        auto tail = quad::integrate_to_inf(h, upper, upper, abs_tol * 0.25);
        return head + bulk.value + tail.value;
    }

    /// Upper integration anchor ~ quantile(1 - 1e-12) (proxy, clamped).
    double safe_upper() const {
        try {
            return quantile(1.0 - 1e-12);
        } catch (const std::exception&) {
            return p_.beta() * std::pow(40.0, 1.0 / p_.alpha());
        }
    }

private:
    static double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }
    static double sgnpow(double t, int n) { return (t < 0.0 && (n & 1)) ? -1.0 : 1.0; }

    void check_mgf_region(double t) const {
        const double a = p_.alpha(), b = p_.beta();
        if (a < 1.0) throw std::domain_error("mgf: unsupported region alpha < 1 (MGF does not exist)");
        if (a == 1.0 && std::fabs(t) >= 1.0 / b)
            throw SeriesError("mgf: series diverges for alpha = 1 with |t| >= 1/beta");
    }

    ParamVector p_;
};

} // namespace bweibull
