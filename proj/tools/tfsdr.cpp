// Command-line front end: simulation runs (`run`) and fits on CSV data (`fit`).

#include "tfsdr/bench.hpp"
#include "tfsdr/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kAllFailed = 2;

std::vector<tfsdr::Method> parse_methods(const std::string& list) {
    std::vector<tfsdr::Method> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto m = tfsdr::parse_method(item);
        if (!m) throw tfsdr::SdrError(tfsdr::ErrorCode::Config, "unknown method '" + item + "'");
        if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    }
    if (out.empty()) throw tfsdr::SdrError(tfsdr::ErrorCode::Config, "no methods given");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sufficient dimension reduction: test-function estimators and simulation bench"};
    app.require_subcommand(1);

    std::string model_text;
    std::string methods_text;
    std::string predictors_text;
    std::string out_csv;
    std::string out_svg;
    tfsdr::ExperimentConfig cfg;
    long long n = 0;
    long long p = 0;

    auto* run = app.add_subcommand("run", "Run a seeded simulation study and write per-replicate distances");
    run->add_option("--model", model_text, "Regression model: I, II, III, IV, V, VI, VIb, VII")->required();
    run->add_option("--methods", methods_text, "Comma-separated subset of sir,save,dr,tf1,tf2")->required();
    run->add_option("--n", n, "Sample size")->required();
    run->add_option("--p", p, "Predictor dimension")->required();
    run->add_option("--H", cfg.slices, "Number of response slices")->required();
    run->add_option("--d", cfg.dim, "Assumed dimension of the central subspace")->required();
    run->add_option("--reps", cfg.reps, "Number of replicates")->required();
    run->add_option("--seed", cfg.seed, "Master seed")->required();
    run->add_option("--out", out_csv, "CSV output path")->required();
    run->add_option("--svg", out_svg, "Optional boxplot SVG output path");
    run->add_option("--max-iter", cfg.max_iter, "Iteration cap for tf1/tf2");
    run->add_option("--tol", cfg.tol, "Convergence tolerance on successive subspace distance");
    run->add_option("--gap-floor", cfg.gap_floor, "Minimum spectral gap magnitude in tf2");
    run->add_option("--chi-slices", cfg.chi_slices, "Slices of the projected predictor in the tf2 score");
    run->add_option("--predictors", predictors_text, "Override predictor family: gaussian, spherical, nonlinear");
    run->add_option("--workers", cfg.workers, "Worker threads (0 = hardware concurrency)");

    std::string data_path;
    std::string response_text;
    std::string method_text;
    tfsdr::EstimatorConfig est;
    auto* fit = app.add_subcommand("fit", "Estimate a central subspace basis from a CSV dataset");
    fit->add_option("--data", data_path, "CSV file")->required();
    fit->add_option("--response", response_text, "Response column name or zero-based index")->required();
    fit->add_option("--method", method_text, "One of sir, save, dr, tf1, tf2")->required();
    fit->add_option("--d", est.dim, "Assumed dimension of the central subspace")->required();
    fit->add_option("--H", est.slices, "Number of response slices")->required();
    fit->add_option("--max-iter", est.max_iter, "Iteration cap for tf1/tf2");
    fit->add_option("--tol", est.tol, "Convergence tolerance");
    fit->add_option("--gap-floor", est.gap_floor, "Minimum spectral gap magnitude in tf2");
    fit->add_option("--chi-slices", est.chi_slices, "Slices of the projected predictor in the tf2 score");
    fit->add_option("--seed", est.seed, "Seed for the tf2 initial weights");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) {
            const auto model = tfsdr::parse_model(model_text);
            if (!model) throw tfsdr::SdrError(tfsdr::ErrorCode::Config, "unknown model '" + model_text + "'");
            cfg.model = *model;
            cfg.methods = parse_methods(methods_text);
            if (!predictors_text.empty()) {
                const auto kind = tfsdr::parse_predictor_kind(predictors_text);
                if (!kind) throw tfsdr::SdrError(tfsdr::ErrorCode::Config, "unknown predictors '" + predictors_text + "'");
                cfg.predictors = *kind;
            }
            cfg.n = static_cast<Eigen::Index>(n);
            cfg.p = static_cast<Eigen::Index>(p);
            cfg.out_csv = out_csv;
            if (!out_svg.empty()) cfg.out_svg = out_svg;
            cfg.validate();

            const auto results = tfsdr::run_experiment(cfg);
            const auto stats = tfsdr::summarize(results);
            tfsdr::write_csv(results, stats, cfg.out_csv);
            if (cfg.out_svg) tfsdr::emit_boxplot_svg(stats, results, *cfg.out_svg);

            for (const auto& r : results) {
                if (r.failed()) {
                    std::cerr << "replicate " << r.replicate << " " << tfsdr::to_string(r.method) << ": " << r.error
                              << "\n";
                }
            }
            for (const auto& s : stats) {
                std::printf("%-5s mean=%.6g median=%.6g failed=%d converged=%.3g\n",
                            std::string(tfsdr::to_string(s.method)).c_str(), s.mean, s.median, s.failures,
                            s.converged_rate);
            }
            const bool all_failed = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.failed(); });
            return all_failed ? kAllFailed : kOk;
        }

        const auto method = tfsdr::parse_method(method_text);
        if (!method) throw tfsdr::SdrError(tfsdr::ErrorCode::Config, "unknown method '" + method_text + "'");
        const tfsdr::Dataset data = tfsdr::load_csv(data_path, tfsdr::ColumnRef::parse(response_text));
        const tfsdr::StandardizedSample sample = tfsdr::standardize(data);
        const tfsdr::SliceAssignment slices = tfsdr::make_slices(data.y, est.slices);
        const tfsdr::SubspaceEstimate e = tfsdr::estimate(*method, sample, slices, est);

        std::printf("# method=%s n=%ld p=%ld d=%d iterations=%d converged=%d\n",
                    std::string(tfsdr::to_string(e.method)).c_str(), static_cast<long>(data.n()),
                    static_cast<long>(data.p()), est.dim, e.iterations, e.converged ? 1 : 0);
        const tfsdr::Matrix& b = e.basis_orig.columns();
        for (Eigen::Index i = 0; i < b.rows(); ++i) {
            for (Eigen::Index k = 0; k < b.cols(); ++k) std::printf(k == 0 ? "%.10g" : ",%.10g", b(i, k));
            std::printf("\n");
        }
        return kOk;
    } catch (const tfsdr::SdrError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == tfsdr::ErrorCode::AllFailed ? kAllFailed : kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
}
