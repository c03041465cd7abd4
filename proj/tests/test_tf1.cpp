#include "tfsdr/estimators.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace tfsdr;
using tfsdr::testing::code_of;
using tfsdr::testing::gaussian_matrix;
using tfsdr::testing::identity_sample;
using tfsdr::testing::simulate;

namespace {

EstimatorConfig config(int slices, int dim) {
    EstimatorConfig cfg;
    cfg.slices = slices;
    cfg.dim = dim;
    return cfg;
}

Vector positive_weights(Eigen::Index h, std::uint64_t seed) {
    Rng rng(seed);
    Vector w(h);
    for (Eigen::Index k = 0; k < h; ++k) w(k) = 0.1 + rng.uniform();
    return w;
}

}  // namespace

TEST(Tf1, SliceProportionalWeightsReproduceSir) {
    const auto sim = simulate(ModelId::I, PredictorKind::spherical_mixture, 500, 10, 10, 4);
    const SliceStats st = slice_stats(sim.sample, sim.slices, Matrix::Identity(10, 10));
    const int d = 2;
    const Vector forced = static_cast<double>(10 - d) * st.p_h;
    const Matrix m = tf1_matrix(st.c_h, forced);
    EXPECT_LT((m * (10 - d) - sir_matrix(st)).norm(), 1e-12 * sir_matrix(st).norm());

    const Basis tf1_span = leading_subspace(sym_eig(m), d);
    const SubspaceEstimate sir = estimate_sir(sim.sample, sim.slices, config(10, d));
    EXPECT_LT(subspace_distance(tf1_span, sir.basis_std), 1e-12);
}

TEST(Tf1, FirstStepUsesTotalSliceMass) {
    const auto sim = simulate(ModelId::II, PredictorKind::gaussian, 300, 6, 5, 8);
    const Tf1State state = tf1_step(sim.sample, sim.slices, std::nullopt, 2);
    const SliceStats st = slice_stats(sim.sample, sim.slices, Matrix::Identity(6, 6));
    EXPECT_LT((state.weights - st.d_h.cwiseInverse()).norm(), 1e-10);
    EXPECT_GT(state.weights.minCoeff(), 0.0);
    EXPECT_LT((state.q_c * state.q_c - state.q_c).norm(), 1e-8);
    EXPECT_LT((state.q_c - state.q_c.transpose()).norm(), 1e-12);
}

TEST(Tf1, AgreesWithSirOnGaussianDataAsSampleGrows) {
    double small = 0.0;
    double large = 0.0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto lo = simulate(ModelId::I, PredictorKind::gaussian, 500, 6, 10, seed);
        const auto hi = simulate(ModelId::I, PredictorKind::gaussian, 20000, 6, 10, seed);
        small += subspace_distance(estimate_tf1(lo.sample, lo.slices, config(10, 2)).basis_std,
                                   estimate_sir(lo.sample, lo.slices, config(10, 2)).basis_std);
        large += subspace_distance(estimate_tf1(hi.sample, hi.slices, config(10, 2)).basis_std,
                                   estimate_sir(hi.sample, hi.slices, config(10, 2)).basis_std);
    }
    EXPECT_LT(large, small);
    EXPECT_LT(large / 3.0, 0.01);
}

TEST(Tf1, ConvergedEstimateIsAFixedPoint) {
    const auto sim = simulate(ModelId::II, PredictorKind::spherical_mixture, 500, 10, 10, 6);
    EstimatorConfig cfg = config(10, 2);
    cfg.tol = 1e-10;
    cfg.max_iter = 500;
    const SubspaceEstimate e = estimate_tf1(sim.sample, sim.slices, cfg);
    ASSERT_TRUE(e.converged);
    EXPECT_GT(e.iterations, 1);
    const Tf1State again = tf1_step(sim.sample, sim.slices, e.basis_std, 2);
    EXPECT_LT(subspace_distance(again.eta, e.basis_std), cfg.tol);
}

TEST(Tf1, IterationCapReportsNonConvergence) {
    const auto sim = simulate(ModelId::II, PredictorKind::spherical_mixture, 500, 10, 10, 6);
    EstimatorConfig cfg = config(10, 2);
    cfg.max_iter = 1;
    cfg.tol = 0.0;
    const SubspaceEstimate e = estimate_tf1(sim.sample, sim.slices, cfg);
    EXPECT_FALSE(e.converged);
    EXPECT_EQ(e.iterations, 1);
}

TEST(Tf1, VanishedProjectedMassIsDegenerateSlice) {
    Matrix z(4, 2);
    z << 1, 0, -1, 0, 0, 1, 0, -1;
    const SliceAssignment a{2, {0, 0, 1, 1}, {2, 2}};
    const std::optional<Basis> current = axis_basis(2, {0});
    EXPECT_EQ(code_of([&] { tf1_step(identity_sample(z), a, current, 1); }), ErrorCode::DegenerateSlice);
}

TEST(OptimalAlpha, OrthonormalRowsWithUnitWeights) {
    Matrix c = Matrix::Zero(2, 3);
    c(0, 0) = 1.0;
    c(1, 1) = 1.0;
    const Matrix alpha = optimal_alpha(c, Vector::Ones(2), 2);
    EXPECT_LT((alpha.transpose() * alpha - Matrix::Identity(2, 2)).norm(), 1e-14);
    const Matrix eta = c.transpose() * alpha;
    EXPECT_LT((eta.transpose() * eta - Matrix::Identity(2, 2)).norm(), 1e-14);
}

TEST(OptimalAlpha, DirectionsMatchReweightedEigenvectors) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const Matrix c = gaussian_matrix(6, 4, seed);
        const Vector w = positive_weights(6, seed + 500);
        const Matrix eta = c.transpose() * optimal_alpha(c, w, 2);
        EXPECT_LT((eta.transpose() * eta - Matrix::Identity(2, 2)).norm(), 1e-10);
        const Basis oracle = leading_subspace(sym_eig(tf1_matrix(c, w)), 2);
        EXPECT_LT(subspace_distance(orthonormalize(eta), oracle), 1e-8) << "seed " << seed;
    }
}

TEST(OptimalAlpha, ScalingWeightsKeepsSpan) {
    const Matrix c = gaussian_matrix(6, 4, 9);
    const Vector w = positive_weights(6, 10);
    const Basis a = orthonormalize(c.transpose() * optimal_alpha(c, w, 2));
    const Basis b = orthonormalize(c.transpose() * optimal_alpha(c, 7.0 * w, 2));
    EXPECT_LT(subspace_distance(a, b), 1e-10);
}

TEST(OptimalAlpha, RankDeficientGram) {
    Matrix c = Matrix::Zero(3, 4);
    c.row(1) << 1, 2, 3, 4;
    EXPECT_EQ(code_of([&] { optimal_alpha(c, Vector::Ones(3), 2); }), ErrorCode::RankDeficient);
}
