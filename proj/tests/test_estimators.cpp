#include "tfsdr/estimators.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

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

// Four points per slice with within-slice covariance exactly I and mean 0.
Matrix isotropic_slices() {
    const double r = std::sqrt(2.0);
    Matrix z(8, 2);
    z << r, 0, -r, 0, 0, r, 0, -r,  //
        r, 0, -r, 0, 0, r, 0, -r;
    return z;
}

const SliceAssignment kTwoByFour{2, {0, 0, 0, 0, 1, 1, 1, 1}, {4, 4}};

}  // namespace

TEST(Sir, TwoSliceDiscreteExample) {
    Matrix z(4, 2);
    z << 1, 0, 1, 0, -1, 0, -1, 0;
    const SliceAssignment a{2, {0, 0, 1, 1}, {2, 2}};
    const auto sample = identity_sample(z);
    const SliceStats st = slice_stats(sample, a, Matrix::Identity(2, 2));
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = 1.0;
    EXPECT_LT((sir_matrix(st) - expected).norm(), 1e-15);

    const SubspaceEstimate e = estimate_sir(sample, a, config(2, 1));
    EXPECT_NEAR(subspace_distance(e.basis_std, axis_basis(2, {0})), 0.0, 1e-15);
    EXPECT_EQ(e.method, Method::sir);
}

TEST(Sir, RecoversLinearIndex) {
    const Matrix x = gaussian_matrix(2000, 6, 101);
    const Dataset d = Dataset::make(x, x.col(0));
    const StandardizedSample s = standardize(d);
    const SubspaceEstimate e = estimate_sir(s, make_slices(d.y, 10), config(10, 1));
    EXPECT_LT(subspace_distance(e.basis_orig, axis_basis(6, {0})), 0.05);
}

TEST(Sir, PureNoiseSpectrumIsSmall) {
    const Eigen::Index n = 2000;
    const int slices = 10;
    const Dataset d = Dataset::make(gaussian_matrix(n, 6, 7), gaussian_matrix(n, 1, 8).col(0));
    const StandardizedSample s = standardize(d);
    const SubspaceEstimate e = estimate_sir(s, make_slices(d.y, slices), config(slices, 1));
    // Under independence n * trace(M) is roughly chi-square with (H - 1) p degrees of freedom.
    EXPECT_LT(e.spectrum.sum(), 3.0 * (slices - 1) * 6.0 / static_cast<double>(n));
}

TEST(Sir, SpanEqualsSliceMeanSpan) {
    // With H = 3 the slice sums satisfy one linear relation, so rank(C) = 2 = d.
    const Matrix x = gaussian_matrix(300, 6, 55);
    const Dataset d = Dataset::make(x, x.col(0) + x.col(1).array().cube().matrix());
    const StandardizedSample s = standardize(d);
    const SliceAssignment a = make_slices(d.y, 3);
    const SubspaceEstimate e = estimate_sir(s, a, config(3, 2));
    const SliceStats st = slice_stats(s, a, Matrix::Identity(6, 6));
    const Basis c_span = orthonormalize(st.c_h.topRows(2).transpose());
    EXPECT_LT(subspace_distance(e.basis_std, c_span), 1e-10);
}

TEST(Save, IsotropicSlicesGiveZeroMatrix) {
    const auto sample = identity_sample(isotropic_slices());
    const SliceStats st = slice_stats(sample, kTwoByFour, Matrix::Identity(2, 2));
    EXPECT_LT(save_matrix(st).norm(), 1e-14);
    EXPECT_EQ(code_of([&] { estimate_save(sample, kTwoByFour, config(2, 1)); }), ErrorCode::RankDeficient);
}

TEST(Save, SingleSliceArithmetic) {
    SliceStats st;
    st.p_h = Vector::Ones(1);
    st.c_h = Matrix::Zero(1, 2);
    Matrix v = Matrix::Identity(2, 2);
    v(0, 0) = 2.0;
    st.v_h = {v};
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = 1.0;
    const Matrix m = save_matrix(st);
    EXPECT_LT((m - expected).norm(), 1e-15);
    EXPECT_NEAR(subspace_distance(leading_subspace(sym_eig(m), 1), axis_basis(2, {0})), 0.0, 1e-15);
}

TEST(Save, ModelFourImprovesWithSampleSize) {
    double small = 0.0;
    double large = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto lo = simulate(ModelId::IV, PredictorKind::gaussian, 200, 6, 5, seed);
        const auto hi = simulate(ModelId::IV, PredictorKind::gaussian, 1000, 6, 5, seed);
        small += subspace_distance(estimate_save(lo.sample, lo.slices, config(5, 1)).basis_orig, axis_basis(6, {0}));
        large += subspace_distance(estimate_save(hi.sample, hi.slices, config(5, 1)).basis_orig, axis_basis(6, {0}));
    }
    EXPECT_LT(large, small);
    EXPECT_LT(large / 5.0, 0.1);
}

TEST(Dr, IsotropicSlicesGiveZeroMatrix) {
    const auto sample = identity_sample(isotropic_slices());
    const SliceStats st = slice_stats(sample, kTwoByFour, Matrix::Identity(2, 2));
    EXPECT_LT(dr_matrix(st).norm(), 1e-14);
    EXPECT_EQ(code_of([&] { estimate_dr(sample, kTwoByFour, config(2, 1)); }), ErrorCode::RankDeficient);
}

TEST(Dr, SharesSirDirectionOnLinearModel) {
    const Matrix x = gaussian_matrix(2000, 6, 303);
    const Vector eps = gaussian_matrix(2000, 1, 304).col(0);
    const Dataset d = Dataset::make(x, x.col(0) + 0.1 * eps);
    const StandardizedSample s = standardize(d);
    const SliceAssignment a = make_slices(d.y, 10);
    const SubspaceEstimate dr = estimate_dr(s, a, config(10, 1));
    const SubspaceEstimate sir = estimate_sir(s, a, config(10, 1));
    EXPECT_LT(subspace_distance(dr.basis_std, sir.basis_std), 0.02);
}

TEST(Dr, RecoversModelSix) {
    const auto sim = simulate(ModelId::VI, PredictorKind::gaussian, 1000, 6, 10, 2024);
    const SubspaceEstimate e = estimate_dr(sim.sample, sim.slices, config(10, 2));
    EXPECT_LT(subspace_distance(e.basis_orig, true_cs(ModelSpec{ModelId::VI}, 6)), 0.5);
}

TEST(ToOriginalCoords, IdentityWhitener) {
    const Basis b = orthonormalize(gaussian_matrix(4, 2, 3));
    const Basis out = to_original_coords(b, identity_sample(Matrix::Zero(8, 4)));
    EXPECT_LT((out.columns() - b.columns()).norm(), 1e-15);
}

TEST(ToOriginalCoords, AxisScalingKeepsAxis) {
    StandardizedSample s = identity_sample(Matrix::Zero(4, 2));
    s.whitener(0, 0) = 0.5;
    const Basis out = to_original_coords(axis_basis(2, {0}), s);
    EXPECT_NEAR(subspace_distance(out, axis_basis(2, {0})), 0.0, 1e-15);
}

TEST(ToOriginalCoords, ShearExample) {
    StandardizedSample s = identity_sample(Matrix::Zero(4, 2));
    s.whitener << 1, 0, 1, 1;
    const Basis out = to_original_coords(axis_basis(2, {0}), s);
    Matrix diag(2, 1);
    diag << 1, 1;
    EXPECT_NEAR(subspace_distance(out, orthonormalize(diag)), 0.0, 1e-15);
}

TEST(AllEstimators, MonotoneRelabelingLeavesBasisUnchanged) {
    const auto sim = simulate(ModelId::I, PredictorKind::gaussian, 400, 6, 8, 77);
    const Vector y2 = sim.data.y.array().cube() + 2.0 * sim.data.y.array();
    const SliceAssignment relabeled = make_slices(y2, 8);
    ASSERT_EQ(relabeled.index, sim.slices.index);
    for (Method m : {Method::sir, Method::save, Method::dr, Method::tf1, Method::tf2}) {
        const SubspaceEstimate a = estimate(m, sim.sample, sim.slices, config(8, 2));
        const SubspaceEstimate b = estimate(m, sim.sample, relabeled, config(8, 2));
        EXPECT_EQ(a.basis_std.columns(), b.basis_std.columns()) << to_string(m);
    }
}

TEST(AllEstimators, ObservationPermutationLeavesSpanUnchanged) {
    const auto sim = simulate(ModelId::VII, PredictorKind::gaussian, 500, 6, 10, 91);
    const Eigen::Index n = sim.data.n();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(3);
    for (Eigen::Index i = n - 1; i > 0; --i) {
        std::swap(perm[static_cast<std::size_t>(i)], perm[rng.next_u64() % static_cast<std::uint64_t>(i + 1)]);
    }
    Matrix x(n, 6);
    Vector y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        x.row(i) = sim.data.x.row(perm[static_cast<std::size_t>(i)]);
        y(i) = sim.data.y(perm[static_cast<std::size_t>(i)]);
    }
    const Dataset d = Dataset::make(x, y);
    const StandardizedSample s = standardize(d);
    const SliceAssignment a = make_slices(d.y, 10);
    for (Method m : {Method::sir, Method::save, Method::dr, Method::tf1, Method::tf2}) {
        const SubspaceEstimate before = estimate(m, sim.sample, sim.slices, config(10, 2));
        const SubspaceEstimate after = estimate(m, s, a, config(10, 2));
        EXPECT_LT(subspace_distance(before.basis_orig, after.basis_orig), 1e-9) << to_string(m);
    }
}

TEST(AllEstimators, OriginalBasisIsWhitenedStandardBasis) {
    const auto sim = simulate(ModelId::V, PredictorKind::gaussian, 300, 5, 6, 12);
    for (Method m : {Method::sir, Method::save, Method::dr, Method::tf1, Method::tf2}) {
        const SubspaceEstimate e = estimate(m, sim.sample, sim.slices, config(6, 2));
        const Matrix& b = e.basis_orig.columns();
        EXPECT_LT((b.transpose() * b - Matrix::Identity(2, 2)).norm(), 1e-9);
        const Basis image = orthonormalize(sim.sample.whitener * e.basis_std.columns());
        EXPECT_LT(subspace_distance(image, e.basis_orig), 1e-12) << to_string(m);
    }
}

TEST(EstimatorConfig, RejectsInconsistentDimensions) {
    const auto sim = simulate(ModelId::I, PredictorKind::gaussian, 100, 6, 5, 1);
    EXPECT_EQ(code_of([&] { estimate_sir(sim.sample, sim.slices, config(5, 6)); }), ErrorCode::Config);
    EXPECT_EQ(code_of([&] { estimate_sir(sim.sample, sim.slices, config(2, 2)); }), ErrorCode::Config);
    EXPECT_EQ(code_of([&] { estimate_tf2(sim.sample, sim.slices, config(5, 3)); }), ErrorCode::Config);
}

TEST(MethodNames, RoundTrip) {
    for (Method m : {Method::sir, Method::save, Method::dr, Method::tf1, Method::tf2}) {
        EXPECT_EQ(parse_method(to_string(m)), m);
    }
    EXPECT_FALSE(parse_method("phd").has_value());
}
