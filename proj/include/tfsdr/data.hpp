#pragma once

#include "tfsdr/numerics.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace tfsdr {

/// Raw predictors (row = observation) and response.
struct Dataset {
    Matrix x;
    Vector y;

    /// Validates shape, finiteness and the n >= min_ratio * p guard.
    static Dataset make(Matrix x, Vector y, double min_ratio = 2.0);

    Eigen::Index n() const noexcept { return x.rows(); }
    Eigen::Index p() const noexcept { return x.cols(); }
};

struct StandardizedSample {
    Matrix z;         ///< (x - mean) * whitener
    Vector mean;      ///< sample mean of x
    Matrix whitener;  ///< sigma^{-1/2}
    Matrix sigma;     ///< 1/n sample covariance of x

    Eigen::Index n() const noexcept { return z.rows(); }
    Eigen::Index p() const noexcept { return z.cols(); }
};

/// Centers and whitens x with the 1/n covariance. The eigenvalue floor is
/// `relative_floor` times the largest covariance eigenvalue; a covariance
/// with any eigenvalue at or below that floor is rejected as Degenerate.
StandardizedSample standardize(const Dataset& d, double relative_floor = 1e-10);

/// Equal-count slicing of a response.
struct SliceAssignment {
    int slices = 0;
    std::vector<int> index;   ///< slice id per observation, 0..slices-1
    std::vector<int> counts;  ///< observations per slice
};

/// Stable sort by value (ties keep original order), then cut into `slices`
/// contiguous blocks of floor(n/H) or ceil(n/H) members, larger blocks first.
SliceAssignment make_slices(const Vector& y, int slices);

/// Per-slice moments of Z, all with 1/n normalization.
struct SliceStats {
    Vector p_h;                ///< slice proportions
    Matrix m_h;                ///< H x p within-slice means
    Matrix c_h;                ///< H x p, row h = (1/n) sum_{i in h} z_i
    std::vector<Matrix> v_h;   ///< within-slice covariances
    std::vector<Matrix> m2_h;  ///< (1/n) sum_{i in h} z_i z_i^T
    Vector d_h;                ///< (1/n) sum_{i in h} ||q_c z_i||^2
    Vector lambda_h;           ///< lower median eigenvalue of m2_h

    int slices() const noexcept { return static_cast<int>(p_h.size()); }
};

SliceStats slice_stats(const StandardizedSample& s, const SliceAssignment& a, const Matrix& q_c);

/// Only the first-order quantities: fills c_h and p_h.
void slice_means(const Matrix& z, const SliceAssignment& a, Matrix& c_h, Vector& p_h);

/// d_h = (1/n) sum_{i in h} ||q z_i||^2 for the projection q = I - B B^T,
/// evaluated as ||z_i||^2 - ||B^T z_i||^2 without forming q.
Vector projected_mass(const Matrix& z, const SliceAssignment& a, const Matrix& basis);

/// Column selector for CSV ingestion: by header name or zero-based index.
struct ColumnRef {
    std::string name;
    long index = -1;

    static ColumnRef parse(const std::string& text);
};

/// Reads a numeric CSV. The first line is treated as a header when any of
/// its cells fails to parse as a number. The response column is removed;
/// the remaining columns become predictors in file order. Non-finite or
/// non-numeric cells raise InvalidInput naming the row and column.
Dataset load_csv(const std::filesystem::path& path, const ColumnRef& response, double min_ratio = 2.0);

}  // namespace tfsdr
