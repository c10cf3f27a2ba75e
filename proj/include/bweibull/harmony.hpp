#pragma once

// Canonical Harmony Search over a box, maximizing a real objective.
// Deterministic for a fixed seed; memory updates are sequential.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rng.hpp"

namespace bweibull {

struct HarmonyConfig {
    std::size_t memory_size = 30;
    double memory_consider_rate = 0.95;   // HMCR
    double pitch_adjust_rate = 0.3;       // PAR
    double bandwidth_fraction = 0.05;     // bandwidth = fraction * (high - low) per dimension
    std::size_t max_iterations = 10000;
    std::array<std::pair<double, double>, 3> bounds{{{1e-3, 15.0}, {1e-3, 15.0}, {-15.0, 15.0}}};
    std::uint64_t seed = 0;

    void validate() const {
        if (memory_size < 2) throw std::invalid_argument("HarmonyConfig: memory_size < 2");
        if (!(memory_consider_rate > 0.0 && memory_consider_rate < 1.0))
            throw std::invalid_argument("HarmonyConfig: HMCR must be in (0,1)");
        if (!(pitch_adjust_rate > 0.0 && pitch_adjust_rate < 1.0))
            throw std::invalid_argument("HarmonyConfig: PAR must be in (0,1)");
        for (const auto& [lo, hi] : bounds)
            if (!(lo < hi)) throw std::invalid_argument("HarmonyConfig: bounds require low < high");
    }
};

struct HarmonyResult {
    std::array<double, 3> best{};
    double value = -std::numeric_limits<double>::infinity();
    std::vector<double> trace;   // best-so-far value per iteration
};

/// Maximize objective(theta) over config.bounds.
template <class F>
inline HarmonyResult harmony_search(const F& objective, const HarmonyConfig& config) {
    config.validate();
    Rng rng(derive_seed(config.seed, 0x4853 /* "HS" */));

    const std::size_t hms = config.memory_size;
    std::vector<std::array<double, 3>> memory(hms);
    std::vector<double> fitness(hms);
    bool any_finite = false;
    for (std::size_t i = 0; i < hms; ++i) {
        for (int j = 0; j < 3; ++j)
            memory[i][j] = rng.uniform(config.bounds[j].first, config.bounds[j].second);
        fitness[i] = objective(memory[i]);
        if (std::isfinite(fitness[i])) any_finite = true;
        else fitness[i] = -std::numeric_limits<double>::infinity();
    }
    if (!any_finite)
        throw std::runtime_error("harmony_search: objective not finite anywhere in the initial memory");

    auto worst_it = [&] { return std::min_element(fitness.begin(), fitness.end()) - fitness.begin(); };
    auto best_it = [&] { return std::max_element(fitness.begin(), fitness.end()) - fitness.begin(); };

    HarmonyResult res;
    res.trace.reserve(config.max_iterations);
    {
        const auto b = best_it();
        res.best = memory[b];
        res.value = fitness[b];
    }

    for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
        std::array<double, 3> cand{};
        for (int j = 0; j < 3; ++j) {
            const double lo = config.bounds[j].first, hi = config.bounds[j].second;
            if (rng.uniform01() < config.memory_consider_rate) {
                cand[j] = memory[rng.index(hms)][j];
                if (rng.uniform01() < config.pitch_adjust_rate) {
                    const double bw = config.bandwidth_fraction * (hi - lo);
                    cand[j] += bw * (2.0 * rng.uniform01() - 1.0);
                    cand[j] = std::clamp(cand[j], lo, hi);
                }
            } else {
                cand[j] = rng.uniform(lo, hi);
            }
        }
        double v = objective(cand);
        if (!std::isfinite(v)) v = -std::numeric_limits<double>::infinity();
        const auto w = worst_it();
        if (v > fitness[w]) {
            memory[w] = cand;
            fitness[w] = v;
            if (v > res.value) {
                res.value = v;
                res.best = cand;
            }
        }
        res.trace.push_back(res.value);
    }
    return res;
}

} // namespace bweibull
