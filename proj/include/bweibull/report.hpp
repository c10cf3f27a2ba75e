#pragma once

// Machine-readable report assembly. JSON layout is stable and contains every
// field needed to reconstruct a fitted-model table row (estimates, SEs, KS,
// p(KS), CVM, p(CVM), q). Reports are byte-reproducible for fixed
// (dataset, flags, seed, version); wall-clock timing is opt-in.

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "entropy.hpp"
#include "fit.hpp"
#include "gof.hpp"
#include "modality.hpp"

namespace bweibull {

inline constexpr const char* tool_name = "bweibull";
inline constexpr const char* tool_version = "1.0.0";

using Json = nlohmann::ordered_json;

inline const char* to_string(GofConvention c) {
    return c == GofConvention::Standard ? "standard" : "paper";
}
inline const char* to_string(Modality m) {
    switch (m) {
        case Modality::Bimodal: return "bimodal";
        case Modality::Unimodal: return "unimodal";
        case Modality::Decreasing: return "decreasing";
        default: return "indeterminate";
    }
}
inline const char* to_string(ModalityMethod m) {
    switch (m) {
        case ModalityMethod::Alpha1Rule: return "alpha1_rule";
        case ModalityMethod::Alpha2Discriminant: return "alpha2_discriminant";
        default: return "numeric";
    }
}
inline const char* to_string(FisherMethod m) {
    switch (m) {
        case FisherMethod::Analytic: return "analytic";
        case FisherMethod::Quadrature: return "quadrature";
        default: return "pseudo_inverse";
    }
}
inline const char* to_string(EntropyMethod m) {
    switch (m) {
        case EntropyMethod::ClosedForm: return "closed_form";
        case EntropyMethod::Series: return "series";
        default: return "quadrature";
    }
}

inline Json gof_to_json(const GofResult& g) {
    return Json{{"convention", to_string(g.convention)},
                {"ks", g.ks_stat},
                {"p_ks", g.ks_pvalue},
                {"cvm", g.cvm_stat},
                {"p_cvm", g.cvm_pvalue}};
}

inline Json modality_to_json(const ModalityReport& m) {
    Json cps = Json::array();
    for (const auto& c : m.critical_points)
        cps.push_back(Json{{"x", c.x}, {"kind", c.kind == CriticalKind::Maximum ? "max" : "min"}});
    Json j{{"classification", to_string(m.classification)},
           {"method", to_string(m.method)},
           {"critical_points", cps}};
    if (m.discriminant) j["discriminant"] = *m.discriminant;
    if (m.coefficients)
        j["coefficients"] = Json{{"a", m.coefficients->a}, {"b", m.coefficients->b},
                                 {"c", m.coefficients->c}, {"d", m.coefficients->d},
                                 {"e", m.coefficients->e}};
    return j;
}

inline Json entropy_to_json(const EntropyValue& e) {
    Json j{{"value", e.value}, {"method", to_string(e.method)}, {"hypothesis_met", e.hypothesis_met}};
    if (e.cross_check) j["cross_check"] = *e.cross_check;
    if (e.series_terms) j["series_terms"] = *e.series_terms;
    return j;
}

inline Json fit_to_json(const FitResult& f) {
    Json fisher = Json::array();
    for (int i = 0; i < 3; ++i)
        fisher.push_back(Json::array({f.fisher(i, 0), f.fisher(i, 1), f.fisher(i, 2)}));
    return Json{{"q", f.q},
                {"estimates", Json{{"alpha", f.alpha}, {"beta", f.beta}, {"delta", f.delta}}},
                {"standard_errors", Json{{"alpha", f.standard_errors[0]},
                                         {"beta", f.standard_errors[1]},
                                         {"delta", f.standard_errors[2]}}},
                {"objective_value", f.objective_value},
                {"iterations", f.iterations},
                {"fisher", fisher},
                {"fisher_method", to_string(f.fisher_method)},
                {"polish_failed", f.polish_failed},
                {"at_bounds", f.at_bounds}};
}

struct Report {
    std::string dataset_label;
    std::string dataset_path;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<Json> models;            // one entry per fit (fit + gof + modality + entropies)
    std::optional<double> q_star;        // set by q-scan
    std::optional<double> timing_seconds;

    Json to_json() const {
        Json j{{"tool", Json{{"name", tool_name}, {"version", tool_version}}},
               {"dataset", Json{{"label", dataset_label}, {"path", dataset_path}, {"n", n}}},
               {"seed", seed}};
        if (q_star) j["q_star"] = *q_star;
        j["models"] = models;
        if (timing_seconds) j["timing_seconds"] = *timing_seconds;
        return j;
    }
};

/// Full per-model block: fit + both GoF conventions + modality + entropies at theta-hat.
inline Json model_block(const FitResult& f, const Dataset& data) {
    const Distribution dist(f.params());
    auto cdf = [&](double x) { return dist.cdf(x); };
    Json j = fit_to_json(f);
    j["log_likelihood"] = log_likelihood(f.params(), data);
    j["gof"] = Json::array({gof_to_json(gof_tests(data.values, cdf, GofConvention::Standard)),
                            gof_to_json(gof_tests(data.values, cdf, GofConvention::PaperCompat))});
    j["modality"] = modality_to_json(classify(dist));
    j["entropy"] = Json{{"shannon", entropy_to_json(shannon(dist))},
                        {"quadratic", entropy_to_json(quadratic(dist))},
                        {"tsallis_q2", entropy_to_json(tsallis(dist, 2.0))}};
    return j;
}

} // namespace bweibull
