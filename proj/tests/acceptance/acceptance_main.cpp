// Acceptance suite: runs every exit criterion at its stated tolerance and
// prints one PASS/FAIL/SKIP line per criterion. Exit code = number of FAILs.
//
// C7 is a known-red stress criterion: at truth (2,2,0) with n = 500 the model
// family carries a near-flat likelihood ridge in (alpha, delta), so the global
// maximum-likelihood estimator does not concentrate tightly enough to meet the
// stated medians/coverage. The suite runs it faithfully and reports the
// measured values rather than weakening the thresholds.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "bweibull/bweibull.hpp"

using namespace bweibull;

namespace {

struct Outcome {
    std::string status;   // PASS / FAIL / SKIP
    std::string detail;
};

int g_fails = 0;

void run(int index, const std::string& name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome oc;
    try {
        oc = body();
    } catch (const std::exception& e) {
        oc = {"FAIL", std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (oc.status == "FAIL") ++g_fails;
    std::printf("C%-2d %-4s [%6.1fs] %s%s%s\n", index, oc.status.c_str(), secs, name.c_str(),
                oc.detail.empty() ? "" : " -- ", oc.detail.c_str());
    std::fflush(stdout);
}

const std::array<double, 4> kAlphas{0.5, 1.0, 2.0, 3.7};
const std::array<double, 2> kBetas{0.5, 2.0};
const std::array<double, 4> kDeltas{-2.0, 0.0, 0.2, 2.3};

std::vector<std::array<double, 3>> theta_grid() {
    std::vector<std::array<double, 3>> g;
    for (double a : kAlphas)
        for (double b : kBetas)
            for (double d : kDeltas) g.push_back({a, b, d});
    return g;
}

std::string data_path(const std::string& name) {
    return std::string(BW_DATA_DIR) + "/" + name;
}

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// ---------------------------------------------------------------- C1
Outcome c1_normalization() {
    double worst_norm = 0.0, worst_comp = 0.0, worst_rt = 0.0;
    for (const auto& th : theta_grid()) {
        Distribution d(th[0], th[1], th[2]);
        const double total = d.integrate_support([&](double x) { return d.pdf(x); }, 1e-11);
        worst_norm = std::max(worst_norm, std::fabs(total - 1.0));
        for (double p : {0.05, 0.25, 0.5, 0.75, 0.95, 0.999}) {
            const double x = d.quantile(p);
            worst_comp = std::max(worst_comp, std::fabs(d.cdf(x) + d.survival(x) - 1.0));
            worst_rt = std::max(worst_rt, std::fabs(d.cdf(d.quantile(p)) - p));
        }
        for (double p : {0.1, 0.4, 0.6, 0.9}) {
            const double x = d.quantile(p);
            const double p2 = d.cdf(x);
            if (p2 > 1e-8 && p2 < 1.0 - 1e-8)
                worst_rt = std::max(worst_rt, std::fabs(d.quantile(p2) - x) / std::max(1.0, x));
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "max |int pdf - 1| = %.2e (<=1e-9), |cdf+surv-1| = %.2e (<=1e-12), roundtrip = %.2e (<=1e-8)",
                  worst_norm, worst_comp, worst_rt);
    const bool ok = worst_norm <= 1e-9 && worst_comp <= 1e-12 && worst_rt <= 1e-8;
    return {ok ? "PASS" : "FAIL", buf};
}

// ---------------------------------------------------------------- C2
Outcome c2_closed_vs_quadrature() {
    double worst = 0.0, worst_ent = 0.0;
    int ent_skips = 0;
    for (const auto& th : theta_grid()) {
        Distribution d(th[0], th[1], th[2]);
        const double a = th[0];
        for (double r : {0.5, 1.0, 2.0, 3.0, 4.0})
            worst = std::max(worst, std::fabs(d.raw_moment(r) - d.expect([r](double x) { return std::pow(x, r); }, 1e-11)));
        worst = std::max(worst, std::fabs(d.expected_log() - d.expect([](double x) { return std::log(x); }, 1e-11)));
        worst = std::max(worst, std::fabs(d.e_xalpha() - d.expect([a](double x) { return std::pow(x, a); }, 1e-11)));
        worst = std::max(worst, std::fabs(d.e_xalpha_log() - d.expect([a](double x) { return std::pow(x, a) * std::log(x); }, 1e-11)));
        worst = std::max(worst, std::fabs(d.e_xalpha_log2() - d.expect([a](double x) {
            const double l = std::log(x);
            return std::pow(x, a) * l * l;
        }, 1e-11)));
        for (double p : {0.25, 0.75}) {
            const double t = d.quantile(p);
            const double pe_quad = d.integrate_support([&](double x) { return x >= t ? x * d.pdf(x) : 0.0; }, 1e-11);
            worst = std::max(worst, std::fabs(d.partial_expectation(t) - pe_quad));
            const double mrl_quad = d.integrate_support([&](double x) { return x >= t ? d.survival(x) : 0.0; }, 1e-11)
                                  / d.survival(t);
            worst = std::max(worst, std::fabs(d.mrl(t) - mrl_quad));
        }
        // entropies: dual-path comparisons where the hypotheses hold
        const auto sh = shannon(d);
        worst_ent = std::max(worst_ent, std::fabs(sh.value - *sh.cross_check));
        const auto qd = quadratic(d);
        if (qd.hypothesis_met) worst_ent = std::max(worst_ent, std::fabs(qd.value - *qd.cross_check));
        else ++ent_skips;
        const auto ts = tsallis(d, 2.0);
        if (ts.hypothesis_met) worst_ent = std::max(worst_ent, std::fabs(ts.value - *ts.cross_check));
        else ++ent_skips;   // series hypothesis fails off delta<0-convergent region
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "max closed-vs-quadrature = %.2e (<=1e-7); entropy dual-path = %.2e (<=1e-6), %d hypothesis-skips",
                  worst, worst_ent, ent_skips);
    const bool ok = worst <= 1e-7 && worst_ent <= 1e-6;
    return {ok ? "PASS" : "FAIL", buf};
}

// ---------------------------------------------------------------- C3
Outcome c3_derivatives() {
    Rng rng(2024);
    double worst_s = 0.0, worst_h = 0.0;
    for (std::uint64_t ds = 0; ds < 3; ++ds) {
        Distribution truth(1.2 + 0.6 * ds, 1.0 + 0.5 * ds, ds == 2 ? -0.8 : 0.6 * ds);
        Dataset data(truth.sample(derive_seed(7, ds), 45), "synthetic");
        for (int rep = 0; rep < 20; ++rep) {
            const std::array<double, 3> th{std::exp(rng.uniform(-0.5, 1.2)),
                                           std::exp(rng.uniform(-0.5, 1.2)),
                                           rng.uniform(-2.5, 2.5)};
            ParamVector p(th[0], th[1], th[2]);
            const Vec3 s = score(p, data);
            const Mat3 h = hessian(p, data);
            for (int i = 0; i < 3; ++i) {
                auto tp = th, tm = th;
                const double step = 1e-6 * std::max(1.0, std::fabs(th[i]));
                tp[i] += step;
                tm[i] -= step;
                const double fp = log_likelihood(ParamVector(tp[0], tp[1], tp[2]), data);
                const double fm = log_likelihood(ParamVector(tm[0], tm[1], tm[2]), data);
                const double fd = (fp - fm) / (2.0 * step);
                worst_s = std::max(worst_s, std::fabs(s[i] - fd) / std::max(1.0, std::fabs(fd)));
                const Vec3 sp = score(ParamVector(tp[0], tp[1], tp[2]), data);
                const Vec3 sm = score(ParamVector(tm[0], tm[1], tm[2]), data);
                for (int j = 0; j < 3; ++j) {
                    const double hfd = (sp[j] - sm[j]) / (2.0 * step);
                    worst_h = std::max(worst_h, std::fabs(h[i][j] - hfd) / std::max(1.0, std::fabs(hfd)));
                }
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "score rel err = %.2e (<=1e-5), hessian rel err = %.2e (<=1e-4)", worst_s, worst_h);
    return {worst_s <= 1e-5 && worst_h <= 1e-4 ? "PASS" : "FAIL", buf};
}

// ---------------------------------------------------------------- C4
int dense_scan_maxima(const Distribution& d, int npts) {
    const double lo = std::log(std::max(d.quantile(1e-7), 1e-12));
    const double hi = std::log(d.quantile(1.0 - 1e-7));
    double prev = d.pdf(std::exp(lo));
    int state = 0, maxima = 0;
    for (int i = 1; i < npts; ++i) {
        const double f = d.pdf(std::exp(lo + (hi - lo) * i / (npts - 1.0)));
        if (f > prev) state = 1;
        else if (f < prev) {
            if (state == 1) ++maxima;
            state = -1;
        }
        prev = f;
    }
    return maxima;
}

Outcome c4_modality_grid() {
    const std::array<double, 5> betas{0.5, 1.0, 2.0, 4.0, 8.0};
    // 40 values of beta^2 delta^2 covering Delta<0 broadly, the Delta>0 window
    // (~1.9652..1.9988), and near-boundary |Delta| ~ 0 stress points
    std::vector<double> w2s{0.05, 0.2, 0.4, 0.6, 0.8, 1.0, 13.0 / 12.0, 1.15, 1.2, 1.25,
                            4.0 / 3.0, 1.4, 1.5, 1.6, 1.7, 1.8, 1.85, 1.9, 1.93, 1.95,
                            1.960, 1.9648, 1.967, 1.97, 1.975, 1.98, 1.985, 1.99, 1.995, 1.99905,
                            2.005, 2.02, 2.1, 2.3, 2.8, 3.5, 5.0, 8.0, 16.0, 36.0};
    int checked = 0, disagree = 0, bimodal_seen = 0, dpos = 0, dneg = 0, dnear = 0;
    for (double b : betas) {
        for (double w2 : w2s) {
            const double del = std::sqrt(w2) / b;
            Distribution dist(2.0, b, del);
            const auto rep = classify(dist);
            const int scan = dense_scan_maxima(dist, 1000000);
            ++checked;
            const double D = *rep.discriminant;
            if (D > 0.0) ++dpos;
            else if (D < 0.0) ++dneg;
            if (std::fabs(D) < 1e-3 * b * b) ++dnear;
            const Modality expect = scan >= 2 ? Modality::Bimodal
                                  : scan == 1 ? Modality::Unimodal
                                              : Modality::Decreasing;
            if (rep.classification != expect) {
                ++disagree;
                std::fprintf(stderr, "  C4 disagreement at beta=%g w2=%g: classify=%d scan=%d\n",
                             b, w2, static_cast<int>(rep.classification), scan);
            }
            if (rep.classification == Modality::Bimodal) ++bimodal_seen;
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "%d points (Delta>0: %d, Delta<0: %d, |Delta|~0: %d), %d bimodal, %d disagreements",
                  checked, dpos, dneg, dnear, bimodal_seen, disagree);
    return {disagree == 0 && checked == 200 && bimodal_seen > 0 && dpos > 0 ? "PASS" : "FAIL", buf};
}

// ---------------------------------------------------------------- C5
Outcome c5_table_reproduction() {
    std::string detail;
    bool ok = true;

    {
        const Dataset carbon = load_dataset(data_path("carbon_fibers.csv"));
        Distribution d(3.6961, 2.7482, 2.3073);
        auto g = gof_tests(carbon.values, [&](double x) { return d.cdf(x); }, GofConvention::PaperCompat);
        ok &= close(g.ks_stat, 0.14, 0.005);
        ok &= close(g.cvm_pvalue, 0.1556, 0.0005);
        char buf[120];
        std::snprintf(buf, sizeof buf, "carbon KS=%.4f (0.14+-0.005) pCVM=%.4f (0.1556+-0.0005)", g.ks_stat, g.cvm_pvalue);
        detail += buf;
    }
    {
        const Dataset river = load_dataset(data_path("wheaton_river.csv"));
        Distribution d(0.9770, 5.4536, 0.1910);
        auto g = gof_tests(river.values, [&](double x) { return d.cdf(x); }, GofConvention::PaperCompat);
        ok &= close(g.ks_stat, 0.0694, 0.0005);
        char buf[80];
        std::snprintf(buf, sizeof buf, "; wheaton KS=%.4f (0.0694+-0.0005)", g.ks_stat);
        detail += buf;
    }
    {
        const Dataset hormone = load_dataset(data_path("growth_hormone.csv"));
        Distribution d(1.2489, 2.2989, 3.5132);
        auto g = gof_tests(hormone.values, [&](double x) { return d.cdf(x); }, GofConvention::PaperCompat);
        ok &= close(g.ks_stat, 0.0857, 0.0005) && close(g.cvm_stat, 0.0357, 0.0005);
        char buf[100];
        std::snprintf(buf, sizeof buf, "; hormone KS=%.4f CVM=%.4f", g.ks_stat, g.cvm_stat);
        detail += buf;
    }
    detail += "; o3max & gastric rows SKIPPED (dataset provenance unconfirmed, not bundled)";
    return {ok ? "PASS" : "FAIL", detail};
}

// ---------------------------------------------------------------- C6
Outcome c6_fit_quality() {
    const Dataset carbon = load_dataset(data_path("carbon_fibers.csv"));
    HarmonyConfig cfg;
    cfg.seed = 42;
    const FitResult mle = fit(carbon, 1.0, cfg);
    const double target_l = log_likelihood(ParamVector(3.6961, 2.7482, 2.3073), carbon);
    const FitResult mlqe = fit(carbon, 0.8, cfg);
    const double target_q = logq_likelihood(ParamVector(4.8707, 2.8434, 1.8986), carbon, 0.8);
    char buf[200];
    std::snprintf(buf, sizeof buf, "l(fit)=%.6f >= %.6f-1e-3; lq(fit)=%.6f >= %.6f-1e-3",
                  mle.objective_value, target_l, mlqe.objective_value, target_q);
    const bool ok = mle.objective_value >= target_l - 1e-3 && mlqe.objective_value >= target_q - 1e-3;
    return {ok ? "PASS" : "FAIL", buf};
}

// ---------------------------------------------------------------- C7
Outcome c7_monte_carlo() {
    const int reps = 100;
    const std::size_t n = 500;
    Distribution truth(2.0, 2.0, 0.0);
    std::vector<double> err_a, err_d;
    std::array<int, 3> cover{0, 0, 0};
    const std::array<double, 3> tr{2.0, 2.0, 0.0};
    HarmonyConfig cfg;
    cfg.max_iterations = 4000;
    for (int rep = 0; rep < reps; ++rep) {
        Dataset data(truth.sample(derive_seed(20260811, rep), n), "mc");
        cfg.seed = derive_seed(424242, rep);
        const FitResult f = fit(data, 1.0, cfg);
        err_a.push_back(std::fabs(f.alpha - 2.0));
        err_d.push_back(std::fabs(f.delta));
        const std::array<double, 3> est{f.alpha, f.beta, f.delta};
        for (int i = 0; i < 3; ++i)
            if (std::isfinite(f.standard_errors[i]) &&
                std::fabs(est[i] - tr[i]) <= 1.6449 * f.standard_errors[i])
                ++cover[i];
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return 0.5 * (v[v.size() / 2] + v[(v.size() - 1) / 2]);
    };
    const double ma = median(err_a), md = median(err_d);
    const int cmin = std::min({cover[0], cover[1], cover[2]});
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "median|a-2|=%.3f (<0.3), median|d|=%.3f (<0.15), coverage a/b/d = %d/%d/%d of %d (>=80)",
                  ma, md, cover[0], cover[1], cover[2], reps);
    const bool ok = ma < 0.3 && md < 0.15 && cmin >= 80;
    return {ok ? "PASS" : "FAIL", buf};
}

// ---------------------------------------------------------------- C8
Outcome c8_q_fisher() {
    double worst_red = 0.0;
    Rng rng(5150);
    for (int k = 0; k < 10; ++k) {
        const double a = 0.8 + 2.4 * rng.uniform01();
        const double b = 0.5 + 2.0 * rng.uniform01();
        const double d = rng.uniform(-1.5, 1.5);
        ParamVector p(a, b, d);
        const Eigen::Matrix3d F = fisher_information(p);
        const Eigen::Matrix3d Fq = q_fisher_information(p, 1.0);
        worst_red = std::max(worst_red, (F - Fq).cwiseAbs().maxCoeff());
    }

    // FI vs Monte Carlo -E[hessian], 1e5 draws
    ParamVector p(2.0, 2.0, 0.5);
    Distribution dist(p);
    const Eigen::Matrix3d F = fisher_information(p);
    const std::size_t n = 100000;
    const auto xs = dist.sample(77, n);
    Eigen::Matrix3d mean = Eigen::Matrix3d::Zero(), m2 = Eigen::Matrix3d::Zero();
    for (double x : xs) {
        Dataset one({x, x, x}, "t");
        const Mat3 h = hessian(p, one);
        Eigen::Matrix3d hi;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) hi(i, j) = -h[i][j] / 3.0;
        mean += hi;
        m2 += hi.cwiseProduct(hi);
    }
    mean /= static_cast<double>(n);
    m2 /= static_cast<double>(n);
    bool mc_ok = true;
    double worst_z = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double se = std::sqrt(std::max(1e-300, m2(i, j) - mean(i, j) * mean(i, j)) / n);
            const double z = std::fabs(F(i, j) - mean(i, j)) / se;
            worst_z = std::max(worst_z, z);
            if (z > 3.0) mc_ok = false;
        }
    char buf[160];
    std::snprintf(buf, sizeof buf, "max |qFI(1) - FI| = %.2e (<=1e-6); MC z-score max = %.2f (<=3)", worst_red, worst_z);
    return {worst_red <= 1e-6 && mc_ok ? "PASS" : "FAIL", buf};
}

// ---------------------------------------------------------------- C9
Outcome c9_sampler() {
    const std::vector<std::array<double, 3>> grid{
        {0.5, 1.0, 1.0}, {1.0, 2.0, 0.2}, {2.0, 2.0, 1.2}, {2.0, 1.0, -1.0}, {3.7, 0.5, 2.3}, {1.5, 2.0, 0.0}};
    const double crit1pct = 1.628 / std::sqrt(10000.0);   // asymptotic 1% critical value
    int bad_seeds = 0;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        int pass_cells = 0;
        for (std::size_t c = 0; c < grid.size(); ++c) {
            Distribution d(grid[c][0], grid[c][1], grid[c][2]);
            const auto xs = d.sample(derive_seed(seed, c), 10000);
            auto g = ks_test(xs, [&](double x) { return d.cdf(x); }, GofConvention::Standard);
            if (g.ks_stat < crit1pct) ++pass_cells;
        }
        if (pass_cells < 5) ++bad_seeds;
        detail += std::to_string(pass_cells) + "/6 ";
    }
    return {bad_seeds == 0 ? "PASS" : "FAIL", "cells passing per seed: " + detail + "(need >=5)"};
}

// ---------------------------------------------------------------- C10
Outcome c10_cvm_convention() {
    // all 20 printed (CVM, p) pairs across the five tables
    const std::vector<std::pair<double, double>> rows{
        {0.0690, 0.1556}, {0.0158, 0.1641}, {0.0734, 0.1549}, {0.0706, 0.1553},
        {0.0556, 0.1577}, {0.0556, 0.1577}, {0.6667, 0.0856}, {0.6667, 0.0856},
        {0.0651, 0.1562}, {0.0357, 0.1608}, {0.0765, 0.1544}, {0.0349, 0.1610},
        {0.0260, 0.1624}, {0.0206, 0.1633}, {0.0336, 0.1612}, {0.0287, 0.1620},
        {0.0962, 0.1514}, {0.1390, 0.1450}, {0.0849, 0.1531}, {0.1422, 0.1446}};
    double worst = 0.0;
    for (const auto& [t, pv] : rows)
        worst = std::max(worst, std::fabs(std::exp(-t) / 6.0 - pv));
    char buf[120];
    std::snprintf(buf, sizeof buf, "max |exp(-T)/6 - p| over 20 rows = %.2e (<= 5e-5)", worst);
    return {worst <= 5e-5 ? "PASS" : "FAIL", buf};
}

} // namespace

int main() {
    std::printf("bweibull acceptance suite (%s %s)\n", tool_name, tool_version);
    run(1, "normalization / complementarity / quantile round-trip", c1_normalization);
    run(2, "closed forms vs quadrature oracle", c2_closed_vs_quadrature);
    run(3, "analytic score and Hessian vs finite differences", c3_derivatives);
    run(4, "alpha=2 modality classification vs dense scan (200-pt grid)", c4_modality_grid);
    run(5, "table reproduction at published estimates (PaperCompat)", c5_table_reproduction);
    run(6, "fit quality on carbon fibers (seed 42)", c6_fit_quality);
    run(7, "Monte Carlo estimator concentration at (2,2,0), n=500", c7_monte_carlo);
    run(8, "q-Fisher reduction and FI vs Monte Carlo Hessian", c8_q_fisher);
    run(9, "sampler one-sample KS across grid and seeds", c9_sampler);
    run(10, "CVM p-value convention reproduces all 20 table entries", c10_cvm_convention);
    std::printf("%d criterion failure(s)\n", g_fails);
    return g_fails;
}
