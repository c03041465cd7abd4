#include "tfsdr/data.hpp"

#include "tfsdr/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tfsdr {

Dataset Dataset::make(Matrix x, Vector y, double min_ratio) {
    if (x.rows() != y.size()) {
        throw SdrError(ErrorCode::DimensionMismatch, "dataset: x has " + std::to_string(x.rows()) +
                                                         " rows but y has " + std::to_string(y.size()));
    }
    if (x.cols() < 1) throw SdrError(ErrorCode::InvalidInput, "dataset: no predictor columns");
    if (static_cast<double>(x.rows()) < min_ratio * static_cast<double>(x.cols())) {
        throw SdrError(ErrorCode::InvalidInput, "dataset: n = " + std::to_string(x.rows()) +
                                                    " is below the guard n >= " + std::to_string(min_ratio) +
                                                    " * p (p = " + std::to_string(x.cols()) + ")");
    }
    if (!x.allFinite() || !y.allFinite()) throw SdrError(ErrorCode::InvalidInput, "dataset: non-finite entry");
    return Dataset{std::move(x), std::move(y)};
}

StandardizedSample standardize(const Dataset& d, double relative_floor) {
    if (!(relative_floor > 0.0)) throw SdrError(ErrorCode::InvalidInput, "standardize: floor must be positive");
    const double n = static_cast<double>(d.n());
    StandardizedSample s;
    s.mean = d.x.colwise().mean().transpose();
    const Matrix centered = d.x.rowwise() - s.mean.transpose();
    s.sigma = (centered.transpose() * centered) / n;
    s.sigma = 0.5 * (s.sigma + s.sigma.transpose());

    const SymEig eig = sym_eig(s.sigma);
    const double top = eig.values(0);
    const double floor = relative_floor * top;
    if (!(top > 0.0) || eig.values(eig.values.size() - 1) <= floor) {
        throw SdrError(ErrorCode::Degenerate, "standardize: sample covariance is singular (a predictor "
                                              "direction has no variance)");
    }
    s.whitener = inv_sqrt_psd(s.sigma, floor);
    s.z = centered * s.whitener;
    return s;
}

SliceAssignment make_slices(const Vector& y, int slices) {
    const auto n = static_cast<long>(y.size());
    if (slices < 1) throw SdrError(ErrorCode::InvalidInput, "make_slices: slice count must be positive");
    if (slices > n) {
        throw SdrError(ErrorCode::TooManySlices,
                       "make_slices: " + std::to_string(slices) + " slices for " + std::to_string(n) + " observations");
    }
    std::vector<long> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0L);
    std::stable_sort(order.begin(), order.end(), [&](long l, long r) { return y(l) < y(r); });

    SliceAssignment a;
    a.slices = slices;
    a.index.assign(static_cast<std::size_t>(n), 0);
    a.counts.assign(static_cast<std::size_t>(slices), static_cast<int>(n / slices));
    for (long h = 0; h < n % slices; ++h) ++a.counts[static_cast<std::size_t>(h)];

    std::size_t pos = 0;
    for (int h = 0; h < slices; ++h) {
        for (int k = 0; k < a.counts[static_cast<std::size_t>(h)]; ++k) {
            a.index[static_cast<std::size_t>(order[pos++])] = h;
        }
    }
    return a;
}

void slice_means(const Matrix& z, const SliceAssignment& a, Matrix& c_h, Vector& p_h) {
    const double n = static_cast<double>(z.rows());
    c_h = Matrix::Zero(a.slices, z.cols());
    p_h = Vector::Zero(a.slices);
    for (Eigen::Index i = 0; i < z.rows(); ++i) c_h.row(a.index[static_cast<std::size_t>(i)]) += z.row(i);
    c_h /= n;
    for (int h = 0; h < a.slices; ++h) p_h(h) = a.counts[static_cast<std::size_t>(h)] / n;
}

Vector projected_mass(const Matrix& z, const SliceAssignment& a, const Matrix& basis) {
    const double n = static_cast<double>(z.rows());
    const Matrix w = z * basis;
    Vector d_h = Vector::Zero(a.slices);
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        const double mass = std::max(0.0, z.row(i).squaredNorm() - w.row(i).squaredNorm());
        d_h(a.index[static_cast<std::size_t>(i)]) += mass;
    }
    return d_h / n;
}

SliceStats slice_stats(const StandardizedSample& s, const SliceAssignment& a, const Matrix& q_c) {
    const Eigen::Index p = s.p();
    const double n = static_cast<double>(s.n());
    if (static_cast<Eigen::Index>(a.index.size()) != s.n()) {
        throw SdrError(ErrorCode::DimensionMismatch, "slice_stats: assignment length differs from sample size");
    }
    if (q_c.rows() != p || q_c.cols() != p) {
        throw SdrError(ErrorCode::DimensionMismatch, "slice_stats: projection has wrong shape");
    }
    for (int count : a.counts) {
        if (count <= 0) throw SdrError(ErrorCode::EmptySlice, "slice_stats: empty slice");
    }

    SliceStats st;
    const int slices = a.slices;
    slice_means(s.z, a, st.c_h, st.p_h);
    st.m_h = st.c_h;
    for (int h = 0; h < slices; ++h) st.m_h.row(h) /= st.p_h(h);

    st.m2_h.assign(static_cast<std::size_t>(slices), Matrix::Zero(p, p));
    st.v_h.assign(static_cast<std::size_t>(slices), Matrix::Zero(p, p));
    st.d_h = Vector::Zero(slices);
    const Matrix projected = s.z * q_c.transpose();
    for (Eigen::Index i = 0; i < s.n(); ++i) {
        const auto h = static_cast<std::size_t>(a.index[static_cast<std::size_t>(i)]);
        const auto zi = s.z.row(i);
        st.m2_h[h].noalias() += zi.transpose() * zi;
        const Eigen::RowVectorXd dev = zi - st.m_h.row(static_cast<Eigen::Index>(h));
        st.v_h[h].noalias() += dev.transpose() * dev;
        st.d_h(static_cast<Eigen::Index>(h)) += projected.row(i).squaredNorm();
    }
    st.d_h /= n;
    st.lambda_h = Vector(slices);
    for (int h = 0; h < slices; ++h) {
        const auto k = static_cast<std::size_t>(h);
        st.m2_h[k] /= n;
        st.v_h[k] /= static_cast<double>(a.counts[k]);
        st.lambda_h(h) = lower_median(sym_eig(st.m2_h[k]).values);
    }
    return st;
}

}  // namespace tfsdr
