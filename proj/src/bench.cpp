#include "tfsdr/bench.hpp"

#include "tfsdr/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <thread>

namespace tfsdr {

void ExperimentConfig::validate() const {
    const auto fail = [](const std::string& msg) { throw SdrError(ErrorCode::Config, msg); };
    if (reps < 1) fail("reps must be at least 1");
    if (p < 2) fail("p must be at least 2");
    if (n < 2 * p) fail("n must be at least 2p");
    if (slices < 2 || slices > n) fail("H must lie in [2, n]");
    if (dim < 1 || dim >= p) fail("d must satisfy 1 <= d < p");
    if (slices < dim + 1) fail("H must be at least d + 1");
    if (predictor_kind() == PredictorKind::nonlinear_coupled && p < 4) fail("nonlinear predictors need p >= 4");
    if (std::find(methods.begin(), methods.end(), Method::tf2) != methods.end() && dim >= p - dim) {
        fail("tf2 needs d < p - d");
    }
    if (max_iter < 1 || !(tol >= 0.0) || !(gap_floor > 0.0) || chi_slices < 0) fail("iteration settings out of range");
    if (workers < 0) fail("workers must be nonnegative");
}

std::uint64_t dataset_hash(const Matrix& x, const Vector& y) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto feed = [&h](const double* data, Eigen::Index count) {
        const auto* bytes = reinterpret_cast<const unsigned char*>(data);
        for (std::size_t k = 0; k < static_cast<std::size_t>(count) * sizeof(double); ++k) {
            h ^= bytes[k];
            h *= 0x100000001b3ULL;
        }
    };
    feed(x.data(), x.size());
    feed(y.data(), y.size());
    return h;
}

namespace {

std::vector<ReplicateResult> run_replicate(const ExperimentConfig& cfg, int replicate) {
    std::vector<ReplicateResult> rows;
    rows.reserve(cfg.methods.size());
    for (Method m : cfg.methods) {
        ReplicateResult r;
        r.replicate = replicate;
        r.method = m;
        r.distance = std::numeric_limits<double>::quiet_NaN();
        rows.push_back(r);
    }
    const auto fail_all = [&rows](const std::string& why) {
        for (auto& r : rows) r.error = why;
    };

    const ModelSpec model{cfg.model};
    ReplicateStreams streams(cfg.seed, static_cast<std::uint64_t>(replicate));
    std::optional<StandardizedSample> sample;
    std::optional<SliceAssignment> assignment;
    try {
        Matrix x = sample_predictors(PredictorSpec{cfg.predictor_kind(), cfg.p}, cfg.n, streams);
        Vector y = apply_model(model, x, streams.noise);
        const std::uint64_t hash = dataset_hash(x, y);
        for (auto& r : rows) r.dataset_hash = hash;
        const Dataset data = Dataset::make(std::move(x), std::move(y));
        sample.emplace(standardize(data));
        assignment.emplace(make_slices(data.y, cfg.slices));
    } catch (const std::exception& e) {
        fail_all(e.what());
        return rows;
    }

    const Basis truth = true_cs(model, cfg.p);
    EstimatorConfig est;
    est.slices = cfg.slices;
    est.dim = cfg.dim;
    est.max_iter = cfg.max_iter;
    est.tol = cfg.tol;
    est.gap_floor = cfg.gap_floor;
    est.chi_slices = cfg.chi_slices;
    est.seed = streams.tf2_seed;
    for (auto& r : rows) {
        try {
            const SubspaceEstimate e = estimate(r.method, *sample, *assignment, est);
            r.distance = subspace_distance(e.basis_orig, truth);
            r.iterations = e.iterations;
            r.converged = e.converged;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    }
    return rows;
}

}  // namespace

std::vector<ReplicateResult> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<std::vector<ReplicateResult>> per_rep(static_cast<std::size_t>(cfg.reps));
    unsigned workers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers) : std::thread::hardware_concurrency();
    workers = std::clamp(workers, 1u, static_cast<unsigned>(cfg.reps));

    std::atomic<int> next{0};
    const auto work = [&] {
        for (int r = next++; r < cfg.reps; r = next++) per_rep[static_cast<std::size_t>(r)] = run_replicate(cfg, r);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    std::vector<ReplicateResult> out;
    out.reserve(static_cast<std::size_t>(cfg.reps) * cfg.methods.size());
    for (auto& rows : per_rep) std::move(rows.begin(), rows.end(), std::back_inserter(out));
    return out;
}

double interpolated_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw SdrError(ErrorCode::InvalidInput, "quantile of empty data");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SummaryStats summarize_distances(Method method, std::vector<double> distances) {
    if (distances.empty()) {
        throw SdrError(ErrorCode::AllFailed, "no successful replicate for " + std::string(to_string(method)));
    }
    std::sort(distances.begin(), distances.end());
    SummaryStats s;
    s.method = method;
    s.successes = static_cast<int>(distances.size());
    double total = 0.0;
    for (double v : distances) total += v;
    s.mean = total / static_cast<double>(distances.size());
    s.median = interpolated_quantile(distances, 0.5);
    s.q1 = interpolated_quantile(distances, 0.25);
    s.q3 = interpolated_quantile(distances, 0.75);
    s.min = distances.front();
    s.max = distances.back();
    return s;
}

std::vector<SummaryStats> summarize(const std::vector<ReplicateResult>& results) {
    std::vector<Method> order;
    for (const auto& r : results) {
        if (std::find(order.begin(), order.end(), r.method) == order.end()) order.push_back(r.method);
    }
    std::vector<SummaryStats> out;
    for (Method m : order) {
        std::vector<double> ok;
        int failures = 0;
        int converged = 0;
        int total = 0;
        for (const auto& r : results) {
            if (r.method != m) continue;
            ++total;
            if (r.failed()) {
                ++failures;
                continue;
            }
            ok.push_back(r.distance);
            if (r.converged) ++converged;
        }
        SummaryStats s;
        if (ok.empty()) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            s.method = m;
            s.mean = s.median = s.q1 = s.q3 = s.min = s.max = nan;
        } else {
            s = summarize_distances(m, std::move(ok));
        }
        s.failures = failures;
        s.converged_rate = static_cast<double>(converged) / static_cast<double>(total);
        out.push_back(s);
    }
    return out;
}

}  // namespace tfsdr
