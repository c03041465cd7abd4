#include "tfsdr/error.hpp"
#include "tfsdr/estimators.hpp"
#include "tfsdr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace tfsdr {

Tf2State tf2_identify(const Vector& alpha, const SliceStats& st, const Matrix& z, const SliceAssignment& a,
                      const EstimatorConfig& cfg) {
    const Eigen::Index p = z.cols();
    const int d = cfg.dim;
    Matrix m = Matrix::Zero(p, p);
    for (int h = 0; h < st.slices(); ++h) m += alpha(h) * st.m2_h[static_cast<std::size_t>(h)];
    const SymEig eig = sym_eig(0.5 * (m + m.transpose()));

    Vector scores(p);
    for (Eigen::Index k = 0; k < p; ++k) scores(k) = chi_square_score(eig.vectors.col(k), z, a, cfg.score_slices());

    std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) {
        if (scores(l) != scores(r)) return scores(l) > scores(r);
        return std::abs(eig.values(l)) > std::abs(eig.values(r));
    });

    Matrix selected(p, d);
    Vector lambda_sel(d);
    for (int k = 0; k < d; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        selected.col(k) = eig.vectors.col(src);
        lambda_sel(k) = eig.values(src);
    }
    Vector rest(p - d);
    for (Eigen::Index k = d; k < p; ++k) rest(k - d) = eig.values(order[static_cast<std::size_t>(k)]);
    const double lambda_star = lower_median(rest);

    Matrix d_psi = Matrix::Zero(d, d);
    int floored = 0;
    for (int k = 0; k < d; ++k) {
        double gap = lambda_sel(k) - lambda_star;
        if (std::abs(gap) < cfg.gap_floor) {
            gap = std::copysign(cfg.gap_floor, gap);
            ++floored;
        }
        d_psi(k, k) = 1.0 / gap;
    }
    if (floored == d) throw SdrError(ErrorCode::DegenerateGap, "tf2: every selected eigenvalue coincides with lambda*");

    return Tf2State{alpha, orthonormalize(selected), lambda_sel, lambda_star, d_psi, Matrix::Zero(d, d),
                    scores, eig.values, 0};
}

Vector tf2_reweight(Tf2State& state, const SliceStats& st, const Matrix& z, const SliceAssignment& a) {
    const Matrix& eta = state.eta.columns();
    const Eigen::Index d = eta.cols();
    const int slices = st.slices();
    const double n = static_cast<double>(z.rows());

    // eta^T A_h eta = (1/n) sum_{i in h} w_i w_i^T ||Q z_i||^2 with w_i = eta^T z_i.
    const Matrix w = z * eta;
    std::vector<Matrix> a_tilde(static_cast<std::size_t>(slices), Matrix::Zero(d, d));
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        const double off_mass = std::max(0.0, z.row(i).squaredNorm() - w.row(i).squaredNorm());
        a_tilde[static_cast<std::size_t>(a.index[static_cast<std::size_t>(i)])].noalias() +=
            off_mass * w.row(i).transpose() * w.row(i);
    }
    for (auto& ah : a_tilde) ah /= n;

    state.a_psi = Matrix::Zero(d, d);
    for (int h = 0; h < slices; ++h) state.a_psi += state.alpha(h) * a_tilde[static_cast<std::size_t>(h)];

    const Matrix& dm = state.d_psi;
    const Matrix d2 = dm * dm;
    const Matrix lead = d2 * state.a_psi * dm;
    const Matrix eye = Matrix::Identity(d, d);

    Vector next(slices);
    state.flagged_updates = 0;
    for (int h = 0; h < slices; ++h) {
        const auto k = static_cast<std::size_t>(h);
        const Matrix b_tilde = eta.transpose() * st.m2_h[k] * eta - st.lambda_h(h) * eye;
        const double den = (d2 * a_tilde[k]).trace();
        if (!(std::abs(den) >= 1e-14)) {
            next(h) = 0.0;
            ++state.flagged_updates;
            continue;
        }
        next(h) = (lead * b_tilde).trace() / den;
    }
    const double norm = next.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw SdrError(ErrorCode::DegenerateGap, "tf2: every slice weight vanished");
    }
    return next / norm;
}

SubspaceEstimate estimate_tf2(const StandardizedSample& s, const SliceAssignment& a, const EstimatorConfig& cfg) {
    cfg.validate(s.p(), true);
    const SliceStats st = slice_stats(s, a, Matrix::Identity(s.p(), s.p()));

    Rng rng(cfg.seed);
    Vector alpha(st.slices());
    for (int h = 0; h < st.slices(); ++h) alpha(h) = rng.uniform();
    if (alpha.norm() > 0.0) alpha.normalize();

    std::optional<Tf2State> state;
    std::optional<Basis> previous;
    bool converged = false;
    int iter = 0;
    int flagged = 0;
    while (iter < cfg.max_iter) {
        ++iter;
        state.emplace(tf2_identify(alpha, st, s.z, a, cfg));
        if (previous && subspace_distance(state->eta, *previous) < cfg.tol) {
            converged = true;
            break;
        }
        if (iter == cfg.max_iter) break;
        alpha = tf2_reweight(*state, st, s.z, a);
        flagged += state->flagged_updates;
        previous.emplace(state->eta);
    }
    Basis orig = to_original_coords(state->eta, s);
    return SubspaceEstimate{state->eta, std::move(orig), Method::tf2, iter, converged, state->spectrum, flagged};
}

}  // namespace tfsdr
