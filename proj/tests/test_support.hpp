#pragma once

#include "tfsdr/data.hpp"
#include "tfsdr/error.hpp"
#include "tfsdr/rng.hpp"
#include "tfsdr/simulation.hpp"

#include <gtest/gtest.h>

#include <cstdint>

namespace tfsdr::testing {

/// Runs f and returns the code of the SdrError it throws; records a failure otherwise.
template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const SdrError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no SdrError thrown";
    return ErrorCode::InvalidInput;
}

/// Sample whose predictors are already standardized (identity whitener).
inline StandardizedSample identity_sample(const Matrix& z) {
    const Eigen::Index p = z.cols();
    return StandardizedSample{z, Vector::Zero(p), Matrix::Identity(p, p), Matrix::Identity(p, p)};
}

inline Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    Rng rng(seed);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
    return m;
}

inline Matrix random_symmetric(Eigen::Index p, std::uint64_t seed) {
    const Matrix g = gaussian_matrix(p, p, seed);
    return 0.5 * (g + g.transpose());
}

struct Simulated {
    Dataset data;
    StandardizedSample sample;
    SliceAssignment slices;
};

inline Simulated simulate(ModelId model, PredictorKind kind, Eigen::Index n, Eigen::Index p, int slices,
                          std::uint64_t seed) {
    ReplicateStreams streams(seed, 0);
    Matrix x = sample_predictors(PredictorSpec{kind, p}, n, streams);
    Vector y = apply_model(ModelSpec{model}, x, streams.noise);
    Dataset data = Dataset::make(std::move(x), std::move(y));
    StandardizedSample sample = standardize(data);
    SliceAssignment a = make_slices(data.y, slices);
    return Simulated{std::move(data), std::move(sample), std::move(a)};
}

}  // namespace tfsdr::testing
