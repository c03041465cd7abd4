#pragma once

#include <Eigen/Dense>

namespace tfsdr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Full spectrum of a real symmetric matrix.
///
/// values are sorted descending; column k of vectors is the unit eigenvector
/// of values[k]. In each column the entry of largest magnitude is made
/// nonnegative, so the output is deterministic for simple eigenvalues.
struct SymEig {
    Vector values;
    Matrix vectors;
};

/// Cyclic Jacobi eigendecomposition with a budget of `max_sweeps` sweeps.
/// Throws NonSymmetric when max|m - m^T| exceeds 1e-9 * max(1, max|m|) and
/// NoConvergence when the off-diagonal mass does not vanish within budget.
SymEig sym_eig(const Matrix& m, int max_sweeps = 100);

/// V diag(max(lambda, floor))^{-1/2} V^T. Throws Degenerate when every
/// eigenvalue lies below `floor`.
Matrix inv_sqrt_psd(const Matrix& m, double floor);

/// Same, with floor = 1e-10 * (largest eigenvalue).
Matrix inv_sqrt_psd(const Matrix& m);

/// A p x d matrix with orthonormal columns. Only constructible through
/// orthonormalize() or axis_basis(), so the invariant always holds.
class Basis {
public:
    const Matrix& columns() const noexcept { return columns_; }
    Eigen::Index ambient_dim() const noexcept { return columns_.rows(); }
    Eigen::Index dim() const noexcept { return columns_.cols(); }

    /// P = B B^T.
    Matrix projection() const { return columns_ * columns_.transpose(); }

    /// Q = I - B B^T.
    Matrix complement_projection() const;

private:
    explicit Basis(Matrix columns) : columns_(std::move(columns)) {}
    friend Basis orthonormalize(const Matrix& b);
    friend Basis axis_basis(Eigen::Index p, std::initializer_list<Eigen::Index> axes);

    Matrix columns_;
};

/// Modified Gram-Schmidt with one re-orthogonalization pass. Column order
/// is preserved. Throws RankDeficient if a column has no component (at
/// relative tolerance 1e-10) outside the span of its predecessors.
Basis orthonormalize(const Matrix& b);

/// Span of the listed coordinate axes in R^p.
Basis axis_basis(Eigen::Index p, std::initializer_list<Eigen::Index> axes);

/// ||P_a - P_b||_F^2 = d_a + d_b - 2 ||A^T B||_F^2.
double subspace_distance(const Basis& a, const Basis& b);

/// Lower median: for an even count the smaller of the two central values.
double lower_median(Vector values);

}  // namespace tfsdr
