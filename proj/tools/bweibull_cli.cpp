// bweibull command line: fit, describe, sample, gof, qscan.
// Exit codes: 0 ok, 1 fit failure, 2 input error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bweibull/bweibull.hpp"

namespace bw = bweibull;

namespace {

struct CommonOpts {
    std::uint64_t seed = 12345;
    std::string out;
    std::string format = "json";
    std::string convention = "paper";
    bool timing = false;
};

int write_output(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write " << out << "\n";
        return 2;
    }
    f << text;
    return 0;
}

bw::GofConvention parse_convention(const std::string& s) {
    if (s == "standard") return bw::GofConvention::Standard;
    if (s == "paper") return bw::GofConvention::PaperCompat;
    throw CLI::ValidationError("--convention must be standard|paper");
}

bool parse_bounds(const std::string& spec, bw::HarmonyConfig& cfg) {
    if (spec.empty()) return true;
    std::stringstream ss(spec);
    std::array<double, 6> v{};
    char comma;
    for (int i = 0; i < 6; ++i) {
        if (!(ss >> v[i])) return false;
        if (i < 5 && !(ss >> comma && comma == ',')) return false;
    }
    cfg.bounds = {{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}}};
    return true;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bimodal Weibull distribution toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(bw::tool_name) + " " + bw::tool_version);

    CommonOpts opt;
    std::string data_path, bounds_spec, q_flag = "1";
    double alpha = 2.0, beta = 1.0, delta = 0.0;
    std::size_t nsamples = 1;
    std::string grid_spec;
    std::size_t hs_iters = 10000;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed, "master seed (all randomness derives from it)");
        cmd->add_option("--out", opt.out, "output path (default stdout)");
        cmd->add_option("--format", opt.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--convention", opt.convention, "standard|paper")
            ->check(CLI::IsMember({"standard", "paper"}));
        cmd->add_flag("--timing", opt.timing, "include wall-clock timing in the report");
    };
    auto add_theta = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "shape")->required();
        cmd->add_option("--beta", beta, "scale")->required();
        cmd->add_option("--delta", delta, "bimodality control")->required();
    };

    auto* cfit = app.add_subcommand("fit", "fit BWeibull to a dataset by maximum log/log_q likelihood");
    cfit->add_option("data", data_path, "dataset file (csv or whitespace)")->required();
    cfit->add_option("--q", q_flag, "q value, or 'scan' for grid selection");
    cfit->add_option("--bounds", bounds_spec, "a_lo,a_hi,b_lo,b_hi,d_lo,d_hi");
    cfit->add_option("--hs-iterations", hs_iters, "harmony search iterations");
    add_common(cfit);

    auto* cqscan = app.add_subcommand("qscan", "fit across the default q grid (alias of fit --q scan)");
    cqscan->add_option("data", data_path)->required();
    cqscan->add_option("--bounds", bounds_spec);
    cqscan->add_option("--hs-iterations", hs_iters);
    add_common(cqscan);

    auto* cdesc = app.add_subcommand("describe", "tabulate pdf/cdf/hazard on a grid + modality/entropy summary");
    add_theta(cdesc);
    cdesc->add_option("--grid", grid_spec, "lo,hi,n (default 0,quantile(0.995),200)");
    add_common(cdesc);

    auto* csample = app.add_subcommand("sample", "draw inverse-CDF samples");
    add_theta(csample);
    csample->add_option("--n", nsamples, "number of draws")->required();
    add_common(csample);

    auto* cgof = app.add_subcommand("gof", "goodness of fit of a dataset against fixed parameters");
    cgof->add_option("data", data_path)->required();
    add_theta(cgof);
    add_common(cgof);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    try {
        if (cfit->parsed() || cqscan->parsed()) {
            bw::Dataset data = bw::load_dataset(data_path);
            bw::HarmonyConfig cfg;
            cfg.seed = opt.seed;
            cfg.max_iterations = hs_iters;
            if (!parse_bounds(bounds_spec, cfg)) {
                std::cerr << "error: bad --bounds spec\n";
                return 2;
            }
            const bool scan = cqscan->parsed() || q_flag == "scan";

            bw::Report rep;
            rep.dataset_label = data.label;
            rep.dataset_path = data_path;
            rep.n = data.n();
            rep.seed = opt.seed;
            if (scan) {
                auto qs = bw::select_q(data, bw::default_q_grid(), cfg, parse_convention(opt.convention));
                rep.q_star = qs.q_star;
                for (const auto& e : qs.entries) rep.models.push_back(bw::model_block(e.fit, data));
            } else {
                double q = 1.0;
                try {
                    q = std::stod(q_flag);
                } catch (...) {
                    std::cerr << "error: --q must be a number or 'scan'\n";
                    return 2;
                }
                bw::FitResult f = bw::fit(data, q, cfg);
                if (!std::isfinite(f.objective_value)) {
                    std::cerr << "error: fit failed (non-finite objective at optimum)\n";
                    return 1;
                }
                rep.models.push_back(bw::model_block(f, data));
            }
            if (opt.timing) rep.timing_seconds = elapsed();
            return write_output(opt.out, rep.to_json().dump(2) + "\n");
        }

        if (cdesc->parsed()) {
            bw::Distribution dist(alpha, beta, delta);
            double lo = 0.0, hi = dist.quantile(0.995);
            std::size_t npts = 200;
            if (!grid_spec.empty()) {
                char c1, c2;
                std::stringstream ss(grid_spec);
                if (!(ss >> lo >> c1 >> hi >> c2 >> npts) || c1 != ',' || c2 != ',' || npts < 2 || !(hi > lo)) {
                    std::cerr << "error: bad --grid spec (expected lo,hi,n)\n";
                    return 2;
                }
            }
            std::ostringstream os;
            os << "x,pdf,cdf,hazard\n";
            for (std::size_t i = 0; i < npts; ++i) {
                const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(npts - 1);
                double hz;
                try {
                    hz = dist.hazard(x);
                } catch (const bw::TailEvaluationError&) {
                    hz = std::numeric_limits<double>::quiet_NaN();
                }
                os << fmt_double(x) << ',' << fmt_double(dist.pdf(x)) << ','
                   << fmt_double(dist.cdf(x)) << ',' << fmt_double(hz) << '\n';
            }
            if (opt.format == "json") {
                bw::Json j{{"tool", bw::Json{{"name", bw::tool_name}, {"version", bw::tool_version}}},
                           {"params", bw::Json{{"alpha", alpha}, {"beta", beta}, {"delta", delta}}},
                           {"table_csv", os.str()},
                           {"modality", bw::modality_to_json(bw::classify(dist))},
                           {"entropy", bw::Json{{"shannon", bw::entropy_to_json(bw::shannon(dist))},
                                                {"quadratic", bw::entropy_to_json(bw::quadratic(dist))},
                                                {"tsallis_q2", bw::entropy_to_json(bw::tsallis(dist, 2.0))}}}};
                if (opt.timing) j["timing_seconds"] = elapsed();
                return write_output(opt.out, j.dump(2) + "\n");
            }
            const auto m = bw::classify(dist);
            std::cerr << "modality: " << bw::to_string(m.classification)
                      << " (" << bw::to_string(m.method) << ")\n";
            return write_output(opt.out, os.str());
        }

        if (csample->parsed()) {
            if (nsamples < 1) {
                std::cerr << "error: --n must be >= 1\n";
                return 2;
            }
            bw::Distribution dist(alpha, beta, delta);
            const auto xs = dist.sample(bw::derive_seed(opt.seed, 1), nsamples);
            std::ostringstream os;
            for (double x : xs) os << fmt_double(x) << '\n';
            return write_output(opt.out, os.str());
        }

        if (cgof->parsed()) {
            bw::Dataset data = bw::load_dataset(data_path);
            bw::Distribution dist(alpha, beta, delta);
            auto cdf = [&](double x) { return dist.cdf(x); };
            bw::Json j{{"tool", bw::Json{{"name", bw::tool_name}, {"version", bw::tool_version}}},
                       {"dataset", bw::Json{{"label", data.label}, {"path", data_path}, {"n", data.n()}}},
                       {"params", bw::Json{{"alpha", alpha}, {"beta", beta}, {"delta", delta}}},
                       {"gof", bw::Json::array({bw::gof_to_json(bw::gof_tests(data.values, cdf, bw::GofConvention::Standard)),
                                                bw::gof_to_json(bw::gof_tests(data.values, cdf, bw::GofConvention::PaperCompat))})}};
            if (opt.timing) j["timing_seconds"] = elapsed();
            return write_output(opt.out, j.dump(2) + "\n");
        }
    } catch (const bw::DatasetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
