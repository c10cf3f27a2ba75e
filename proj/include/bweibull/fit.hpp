#pragma once

// Fitting pipeline: Harmony Search over the bounded box, then a local
// score-driven polish (Newton with gradient-ascent fallback), Fisher
// information and standard errors at the optimum; q-selection by
// goodness-of-fit p-values over a q grid.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <vector>

#include "fisher.hpp"
#include "gof.hpp"
#include "harmony.hpp"
#include "likelihood.hpp"

namespace bweibull {

struct FitResult {
    double alpha = 0.0, beta = 0.0, delta = 0.0;
    std::array<double, 3> standard_errors{};
    double q = 1.0;                       // 1 means plain MLE
    double objective_value = 0.0;         // l (q=1) or l_q at theta-hat
    std::size_t iterations = 0;           // HS iterations + polish steps
    Eigen::Matrix3d fisher;               // sample information, n * FI_1
    FisherMethod fisher_method = FisherMethod::Analytic;
    bool polish_failed = false;
    bool at_bounds = false;

    ParamVector params() const { return {alpha, beta, delta}; }
};

inline const std::vector<double>& default_q_grid() {
    static const std::vector<double> grid{0.75, 0.8, 0.85, 0.87, 0.9, 0.95, 0.99, 1.0};
    return grid;
}

namespace detail {

inline double objective_value(const Dataset& data, double q, const std::array<double, 3>& th) {
    try {
        ParamVector p(th[0], th[1], th[2]);
        const double v = q == 1.0 ? log_likelihood(p, data) : logq_likelihood(p, data, q);
        return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
    } catch (const std::exception&) {
        return -std::numeric_limits<double>::infinity();
    }
}

inline Vec3 objective_score(const Dataset& data, double q, const ParamVector& p) {
    return q == 1.0 ? score(p, data) : logq_score(p, data, q);
}

// Newton/gradient polish inside the bounds. Stops at ||score||_inf < 1e-6 n
// or 200 steps; reverts to the start if no improvement was found.
inline std::array<double, 3> polish(const Dataset& data, double q, std::array<double, 3> th,
                                    const HarmonyConfig& cfg, bool& failed, bool& at_bounds,
                                    std::size_t& steps) {
    const double n = static_cast<double>(data.n());
    const double tol = 1e-6 * n;
    const std::array<double, 3> start = th;
    double fbest = objective_value(data, q, th);
    const double fstart = fbest;
    failed = false;
    at_bounds = false;

    auto clampstep = [&](std::array<double, 3> t) {
        for (int j = 0; j < 3; ++j)
            t[j] = std::clamp(t[j], cfg.bounds[j].first, cfg.bounds[j].second);
        return t;
    };
    auto on_bound = [&](const std::array<double, 3>& t) {
        for (int j = 0; j < 3; ++j)
            if (t[j] <= cfg.bounds[j].first || t[j] >= cfg.bounds[j].second) return true;
        return false;
    };

    for (steps = 0; steps < 200; ++steps) {
        ParamVector p(th[0], th[1], th[2]);
        const Vec3 g = objective_score(data, q, p);
        const double gn = std::max({std::fabs(g[0]), std::fabs(g[1]), std::fabs(g[2])});
        if (!std::isfinite(gn)) { failed = true; break; }
        if (gn < tol) { at_bounds = on_bound(th); return th; }

        Eigen::Vector3d ge(g[0], g[1], g[2]);
        Eigen::Vector3d dir;
        bool have_newton = false;
        if (q == 1.0) {
            const Mat3 hm = hessian(p, data);
            Eigen::Matrix3d H;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) H(i, j) = hm[i][j];
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(H);
            if (es.eigenvalues().maxCoeff() < -1e-12) {   // negative definite: ascend by Newton
                dir = -H.ldlt().solve(ge);
                have_newton = dir.dot(ge) > 0.0 && dir.allFinite();
            }
        }
        if (!have_newton) {
            // scaled gradient ascent; parameter scales differ wildly
            Eigen::Vector3d scale(std::max(0.1, std::fabs(th[0])), std::max(0.1, std::fabs(th[1])), 1.0 + std::fabs(th[2]));
            dir = ge.cwiseProduct(scale.cwiseProduct(scale)) / n;
        }

        double step = 1.0;
        bool improved = false;
        for (int bt = 0; bt < 40; ++bt) {
            std::array<double, 3> cand = clampstep({th[0] + step * dir(0), th[1] + step * dir(1), th[2] + step * dir(2)});
            const double fc = objective_value(data, q, cand);
            if (fc > fbest + 1e-14 * std::fabs(fbest)) {
                th = cand;
                fbest = fc;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            at_bounds = on_bound(th);
            return th;   // stationary to line-search resolution
        }
    }
    if (fbest < fstart) { failed = true; return start; }
    at_bounds = on_bound(th);
    return th;
}

} // namespace detail

/// Maximum log- (q = 1) or log_q-likelihood fit with HS + local polish.
inline FitResult fit(const Dataset& data, double q, const HarmonyConfig& config) {
    auto objective = [&](const std::array<double, 3>& th) {
        return detail::objective_value(data, q, th);
    };
    const HarmonyResult hs = harmony_search(objective, config);

    bool failed = false, at_bounds = false;
    std::size_t psteps = 0;
    const auto th = detail::polish(data, q, hs.best, config, failed, at_bounds, psteps);

    FitResult r;
    r.alpha = th[0];
    r.beta = th[1];
    r.delta = th[2];
    r.q = q;
    r.objective_value = objective(th);
    r.iterations = config.max_iterations + psteps;
    r.polish_failed = failed;
    r.at_bounds = at_bounds;
    const Eigen::Matrix3d fi1 = fisher_information(r.params());
    r.fisher = static_cast<double>(data.n()) * fi1;
    const StandardErrors se = standard_errors(r.fisher, static_cast<double>(data.n()));
    r.standard_errors = se.se;
    r.fisher_method = se.finite && se.method == FisherMethod::Analytic ? FisherMethod::Analytic : se.method;
    return r;
}

struct QScanEntry {
    double q;
    FitResult fit;
    GofResult gof;   // convention used for selection
};

struct QScanResult {
    double q_star;
    FitResult best;
    std::vector<QScanEntry> entries;
};

/// Fit at each q in the grid and select the q with the largest KS p-value
/// (ties: larger CVM p-value, then q closest to 1). Sub-fits run as
/// independent tasks with derived seeds.
inline QScanResult select_q(const Dataset& data, const std::vector<double>& q_grid,
                            const HarmonyConfig& config, GofConvention convention = GofConvention::PaperCompat) {
    if (q_grid.empty()) throw std::invalid_argument("select_q: empty q grid");
    std::vector<std::future<QScanEntry>> tasks;
    tasks.reserve(q_grid.size());
    for (std::size_t k = 0; k < q_grid.size(); ++k) {
        const double q = q_grid[k];
        HarmonyConfig cfg = config;
        cfg.seed = derive_seed(config.seed, k + 1);
        tasks.push_back(std::async(std::launch::async, [&, q, cfg] {
            QScanEntry e{q, fit(data, q, cfg), {}};
            const Distribution d(e.fit.params());
            e.gof = gof_tests(data.values, [&](double x) { return d.cdf(x); }, convention);
            return e;
        }));
    }
    QScanResult out{q_grid.front(), {}, {}};
    for (auto& t : tasks) out.entries.push_back(t.get());

    const QScanEntry* best = &out.entries.front();
    for (const auto& e : out.entries) {
        if (e.gof.ks_pvalue > best->gof.ks_pvalue + 1e-12) { best = &e; continue; }
        if (std::fabs(e.gof.ks_pvalue - best->gof.ks_pvalue) <= 1e-12) {
            if (e.gof.cvm_pvalue > best->gof.cvm_pvalue + 1e-12) { best = &e; continue; }
            if (std::fabs(e.gof.cvm_pvalue - best->gof.cvm_pvalue) <= 1e-12 &&
                std::fabs(e.q - 1.0) < std::fabs(best->q - 1.0)) { best = &e; continue; }
        }
    }
    out.q_star = best->q;
    out.best = best->fit;
    return out;
}

} // namespace bweibull
