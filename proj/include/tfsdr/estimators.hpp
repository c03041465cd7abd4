#pragma once

#include "tfsdr/data.hpp"
#include "tfsdr/numerics.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace tfsdr {

enum class Method { sir, save, dr, tf1, tf2 };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view text);

struct EstimatorConfig {
    int slices = 10;          ///< H
    int dim = 1;              ///< assumed dimension d of the central subspace
    int max_iter = 100;
    double tol = 1e-8;        ///< on the distance between successive estimates
    double gap_floor = 1e-8;  ///< minimum |lambda_k - lambda*| when inverting gaps
    int chi_slices = 0;       ///< slices of eta^T z in the chi-square score; 0 means `slices`
    std::uint64_t seed = 0;   ///< initial TF2 weights

    int score_slices() const noexcept { return chi_slices > 0 ? chi_slices : slices; }

    /// Checks 1 <= d < p and H >= d + 1; with `order_two` also d < p - d.
    void validate(Eigen::Index p, bool order_two) const;
};

struct SubspaceEstimate {
    Basis basis_std;   ///< in standardized coordinates
    Basis basis_orig;  ///< whitener * basis_std, orthonormalized
    Method method;
    int iterations = 1;
    bool converged = true;
    Vector spectrum;           ///< eigenvalues of the final method matrix, descending
    int flagged_updates = 0;   ///< TF2 weight updates zeroed for a vanishing denominator
};

/// Plug-in method matrices.
Matrix sir_matrix(const SliceStats& st);
Matrix save_matrix(const SliceStats& st);
Matrix dr_matrix(const SliceStats& st);
/// sum_h c_h c_h^T / d_h for the H x p matrix of slice covariances c.
Matrix tf1_matrix(const Matrix& c_h, const Vector& d_h);

/// Top-d eigenvectors of a method matrix. Throws RankDeficient when the
/// d-th eigenvalue is at or below 1e-12.
Basis leading_subspace(const SymEig& eig, int d);

/// Maps a standardized-coordinate basis back to predictor coordinates.
Basis to_original_coords(const Basis& e, const StandardizedSample& s);

SubspaceEstimate estimate_sir(const StandardizedSample& s, const SliceAssignment& a, const EstimatorConfig& cfg);
SubspaceEstimate estimate_save(const StandardizedSample& s, const SliceAssignment& a, const EstimatorConfig& cfg);
SubspaceEstimate estimate_dr(const StandardizedSample& s, const SliceAssignment& a, const EstimatorConfig& cfg);
SubspaceEstimate estimate_tf1(const StandardizedSample& s, const SliceAssignment& a, const EstimatorConfig& cfg);
SubspaceEstimate estimate_tf2(const StandardizedSample& s, const SliceAssignment& a, const EstimatorConfig& cfg);

SubspaceEstimate estimate(Method m, const StandardizedSample& s, const SliceAssignment& a,
                          const EstimatorConfig& cfg);

// ---------------------------------------------------------------------------
// Order-1 test function internals.

struct Tf1State {
    Basis eta;      ///< current estimate
    Matrix q_c;     ///< I - eta eta^T
    Vector weights; ///< 1 / d_h
    Matrix m;       ///< sum_h c_h c_h^T / d_h
    Vector spectrum;
};

/// One plug-in step: slice masses under the projection off `current`
/// (or the identity when `current` is empty), reweighted matrix, top-d
/// eigenvectors. Throws DegenerateSlice when some d_h < 1e-12.
Tf1State tf1_step(const StandardizedSample& s, const SliceAssignment& a, const std::optional<Basis>& current,
                  int d);

/// Optimal indicator weights for order-1 test functions.
///
/// With rows of `c` the slice covariances C_h and D = diag(d_vec), builds
/// G = D^{-1/2} C C^T D^{-1/2}, takes its top-d eigenpairs (P1, D0) and
/// returns the H x d weight matrix D^{-1/2} P1 D0^{-1/2}. The directions
/// C^T alpha are then orthonormal. Throws RankDeficient when rank(G) < d.
Matrix optimal_alpha(const Matrix& c, const Vector& d_vec, int d);

// ---------------------------------------------------------------------------
// Order-2 test function internals.

/// Pearson dependence score between the slices of y and the equal-count
/// slices of z * eta. Cells with zero marginal product contribute nothing.
double chi_square_score(const Vector& eta, const Matrix& z, const Vector& y, int slices, int eta_slices);

/// Same, with the response slices already computed.
double chi_square_score(const Vector& eta, const Matrix& z, const SliceAssignment& y_slices, int eta_slices);

struct Tf2State {
    Vector alpha;        ///< slice weights of psi, unit norm
    Basis eta;           ///< d selected eigenvectors
    Vector lambda_sel;   ///< their eigenvalues
    double lambda_star = 0.0;
    Matrix d_psi;        ///< diag(1 / (lambda_k - lambda*)), gap-floored
    Matrix a_psi;        ///< sum_h alpha_h eta^T A_h eta
    Vector scores;       ///< chi-square score of each eigenvector, in spectrum order
    Vector spectrum;
    int flagged_updates = 0;
};

/// Step 1 of the TF2 iteration: eigendecomposes sum_h alpha_h M_h, scores
/// every eigenvector, keeps the d with the largest score (ties: larger
/// |eigenvalue|, then spectrum order) and derives lambda* and D.
/// Throws DegenerateGap when every selected gap sits at the floor.
Tf2State tf2_identify(const Vector& alpha, const SliceStats& st, const Matrix& z, const SliceAssignment& a,
                      const EstimatorConfig& cfg);

/// Steps 2-3: builds A_h under Q = I - eta eta^T and returns the updated
/// weights normalized to unit length. Fills state.a_psi and counts zeroed
/// updates in state.flagged_updates.
Vector tf2_reweight(Tf2State& state, const SliceStats& st, const Matrix& z, const SliceAssignment& a);

}  // namespace tfsdr
