#pragma once

#include "tfsdr/estimators.hpp"
#include "tfsdr/simulation.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tfsdr {

struct ExperimentConfig {
    ModelId model = ModelId::IV;
    std::optional<PredictorKind> predictors;  ///< overrides the model's default family
    std::vector<Method> methods;
    Eigen::Index n = 100;
    Eigen::Index p = 6;
    int slices = 5;
    int dim = 1;
    int reps = 100;
    std::uint64_t seed = 1;
    std::filesystem::path out_csv;
    std::optional<std::filesystem::path> out_svg;
    int max_iter = 100;
    double tol = 1e-8;
    double gap_floor = 1e-8;
    int chi_slices = 0;
    int workers = 0;  ///< 0 means hardware concurrency

    PredictorKind predictor_kind() const { return predictors.value_or(ModelSpec{model}.implied_predictors()); }

    /// Throws Config when reps, (n, p, H) or d violate the estimator and data guards.
    void validate() const;
};

struct ReplicateResult {
    int replicate = 0;
    Method method = Method::sir;
    double distance = 0.0;  ///< NaN when the estimator failed
    int iterations = 0;
    bool converged = false;
    std::uint64_t dataset_hash = 0;
    std::string error;  ///< empty on success

    bool failed() const { return !error.empty(); }
};

struct SummaryStats {
    Method method = Method::sir;
    double mean = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double min = 0.0;
    double max = 0.0;
    double converged_rate = 0.0;  ///< over all replicates of the method
    int successes = 0;
    int failures = 0;
    bool all_failed() const { return successes == 0; }
};

/// Quantile of sorted data by linear interpolation between order statistics
/// (position q * (n - 1)).
double interpolated_quantile(std::span<const double> sorted, double q);

/// FNV-1a over the bytes of x and y, logged per replicate to confirm that
/// every method saw the same data.
std::uint64_t dataset_hash(const Matrix& x, const Vector& y);

/// One dataset per replicate, every requested method applied to it.
/// Estimator failures become rows with NaN distance and an error message.
std::vector<ReplicateResult> run_experiment(const ExperimentConfig& cfg);

/// Distance statistics of one method. Throws AllFailed on an empty input.
SummaryStats summarize_distances(Method method, std::vector<double> distances);

/// Per-method summaries in first-appearance order. A method whose every
/// replicate failed is reported with all_failed() and NaN statistics.
std::vector<SummaryStats> summarize(const std::vector<ReplicateResult>& results);

/// Writes rows `replicate,method,distance,iterations,converged`, then a
/// `# summary` line and `method,mean,median,q1,q3,min,max,converged_rate`.
/// Numbers use the shortest round-trip representation; NaN is written NA.
void write_csv(const std::vector<ReplicateResult>& results, const std::vector<SummaryStats>& stats,
               const std::filesystem::path& path);

std::string format_csv(const std::vector<ReplicateResult>& results, const std::vector<SummaryStats>& stats);

/// Static SVG with one Tukey boxplot per method on a shared y-axis.
void emit_boxplot_svg(const std::vector<SummaryStats>& stats, const std::vector<ReplicateResult>& results,
                      const std::filesystem::path& path);

std::string render_boxplot_svg(const std::vector<SummaryStats>& stats, const std::vector<ReplicateResult>& results);

}  // namespace tfsdr
