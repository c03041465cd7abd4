#include "tfsdr/error.hpp"
#include "tfsdr/estimators.hpp"

namespace tfsdr {

double chi_square_score(const Vector& eta, const Matrix& z, const SliceAssignment& y_slices, int eta_slices) {
    if (eta.size() != z.cols()) throw SdrError(ErrorCode::DimensionMismatch, "chi_square_score: eta has wrong length");
    if (static_cast<Eigen::Index>(y_slices.index.size()) != z.rows()) {
        throw SdrError(ErrorCode::DimensionMismatch, "chi_square_score: response slicing has wrong length");
    }
    const Vector projected = z * eta;
    const SliceAssignment cols = make_slices(projected, eta_slices);
    const double n = static_cast<double>(z.rows());

    Matrix joint = Matrix::Zero(y_slices.slices, eta_slices);
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        joint(y_slices.index[k], cols.index[k]) += 1.0;
    }
    joint /= n;
    const Vector rows = joint.rowwise().sum();
    const Eigen::RowVectorXd columns = joint.colwise().sum();

    double score = 0.0;
    for (Eigen::Index h = 0; h < joint.rows(); ++h) {
        for (Eigen::Index g = 0; g < joint.cols(); ++g) {
            const double expected = rows(h) * columns(g);
            if (expected <= 0.0) continue;
            const double diff = joint(h, g) - expected;
            score += diff * diff / expected;
        }
    }
    return score;
}

double chi_square_score(const Vector& eta, const Matrix& z, const Vector& y, int slices, int eta_slices) {
    if (y.size() != z.rows()) throw SdrError(ErrorCode::DimensionMismatch, "chi_square_score: y has wrong length");
    return chi_square_score(eta, z, make_slices(y, slices), eta_slices);
}

}  // namespace tfsdr
