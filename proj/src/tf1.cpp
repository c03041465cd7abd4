#include "tfsdr/error.hpp"
#include "tfsdr/estimators.hpp"

namespace tfsdr {

Tf1State tf1_step(const StandardizedSample& s, const SliceAssignment& a, const std::optional<Basis>& current,
                  int d) {
    Matrix c_h;
    Vector p_h;
    slice_means(s.z, a, c_h, p_h);
    const Vector d_h = current ? projected_mass(s.z, a, current->columns())
                               : projected_mass(s.z, a, Matrix::Zero(s.p(), 0));
    for (Eigen::Index h = 0; h < d_h.size(); ++h) {
        if (!(d_h(h) >= 1e-12)) {
            throw SdrError(ErrorCode::DegenerateSlice,
                           "tf1: projected mass of slice " + std::to_string(h) + " vanished");
        }
    }
    Matrix m = tf1_matrix(c_h, d_h);
    const SymEig eig = sym_eig(m);
    Basis eta = leading_subspace(eig, d);
    Matrix q_c = eta.complement_projection();
    return Tf1State{std::move(eta), std::move(q_c), d_h.cwiseInverse(), std::move(m), eig.values};
}

SubspaceEstimate estimate_tf1(const StandardizedSample& s, const SliceAssignment& a, const EstimatorConfig& cfg) {
    cfg.validate(s.p(), false);
    std::optional<Basis> current;
    std::optional<Tf1State> state;
    bool converged = false;
    int iter = 0;
    while (iter < cfg.max_iter) {
        ++iter;
        state.emplace(tf1_step(s, a, current, cfg.dim));
        if (current && subspace_distance(state->eta, *current) < cfg.tol) {
            converged = true;
            break;
        }
        current.emplace(state->eta);
    }
    Basis orig = to_original_coords(state->eta, s);
    return SubspaceEstimate{state->eta, std::move(orig), Method::tf1, iter, converged, state->spectrum, 0};
}

Matrix optimal_alpha(const Matrix& c, const Vector& d_vec, int d) {
    if (c.rows() != d_vec.size()) throw SdrError(ErrorCode::DimensionMismatch, "optimal_alpha: C and D disagree");
    if (d < 1 || d > c.rows()) throw SdrError(ErrorCode::InvalidInput, "optimal_alpha: bad dimension");
    if (!(d_vec.minCoeff() > 0.0)) throw SdrError(ErrorCode::InvalidInput, "optimal_alpha: weights must be positive");

    const Vector inv_root = d_vec.cwiseSqrt().cwiseInverse();
    const Matrix g = inv_root.asDiagonal() * (c * c.transpose()) * inv_root.asDiagonal();
    const SymEig eig = sym_eig(0.5 * (g + g.transpose()));
    if (!(eig.values(0) > 0.0) || eig.values(d - 1) <= 1e-12 * eig.values(0)) {
        throw SdrError(ErrorCode::RankDeficient, "optimal_alpha: Gram matrix has rank below d");
    }
    const Vector d0_inv_root = eig.values.head(d).cwiseSqrt().cwiseInverse();
    return inv_root.asDiagonal() * eig.vectors.leftCols(d) * d0_inv_root.asDiagonal();
}

}  // namespace tfsdr
