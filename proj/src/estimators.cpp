#include "tfsdr/estimators.hpp"

#include "tfsdr/error.hpp"

namespace tfsdr {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::sir: return "sir";
        case Method::save: return "save";
        case Method::dr: return "dr";
        case Method::tf1: return "tf1";
        case Method::tf2: return "tf2";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view text) {
    for (Method m : {Method::sir, Method::save, Method::dr, Method::tf1, Method::tf2}) {
        if (to_string(m) == text) return m;
    }
    return std::nullopt;
}

void EstimatorConfig::validate(Eigen::Index p, bool order_two) const {
    if (dim < 1 || dim >= p) {
        throw SdrError(ErrorCode::Config, "dimension d = " + std::to_string(dim) + " must satisfy 1 <= d < p = " +
                                              std::to_string(p));
    }
    if (slices < dim + 1) {
        throw SdrError(ErrorCode::Config, "slice count H = " + std::to_string(slices) + " must be at least d + 1");
    }
    if (order_two && dim >= p - dim) {
        throw SdrError(ErrorCode::Config, "order-2 test functions need d < p - d");
    }
    if (max_iter < 1 || !(tol >= 0.0) || !(gap_floor > 0.0) || chi_slices < 0) {
        throw SdrError(ErrorCode::Config, "iteration settings out of range");
    }
}

Matrix sir_matrix(const SliceStats& st) {
    const Eigen::Index p = st.c_h.cols();
    Matrix m = Matrix::Zero(p, p);
    for (int h = 0; h < st.slices(); ++h) m.noalias() += st.c_h.row(h).transpose() * st.c_h.row(h) / st.p_h(h);
    return m;
}

Matrix save_matrix(const SliceStats& st) {
    const Eigen::Index p = st.c_h.cols();
    const Matrix eye = Matrix::Identity(p, p);
    Matrix m = Matrix::Zero(p, p);
    for (int h = 0; h < st.slices(); ++h) {
        const Matrix dev = st.v_h[static_cast<std::size_t>(h)] - eye;
        m.noalias() += st.p_h(h) * dev * dev;
    }
    return m;
}

Matrix dr_matrix(const SliceStats& st) {
    const Eigen::Index p = st.c_h.cols();
    const Matrix eye = Matrix::Identity(p, p);
    Matrix m = Matrix::Zero(p, p);
    for (int h = 0; h < st.slices(); ++h) {
        const Matrix dev = st.m2_h[static_cast<std::size_t>(h)] / st.p_h(h) - eye;
        m.noalias() += st.p_h(h) * dev * dev;
    }
    const Matrix sir = sir_matrix(st);
    m.noalias() += sir * sir;
    m += sir.trace() * sir;
    return m;
}

Matrix tf1_matrix(const Matrix& c_h, const Vector& d_h) {
    const Eigen::Index p = c_h.cols();
    Matrix m = Matrix::Zero(p, p);
    for (Eigen::Index h = 0; h < c_h.rows(); ++h) m.noalias() += c_h.row(h).transpose() * c_h.row(h) / d_h(h);
    return m;
}

Basis leading_subspace(const SymEig& eig, int d) {
    if (d < 1 || d > eig.values.size()) throw SdrError(ErrorCode::InvalidInput, "leading_subspace: bad dimension");
    if (!(eig.values(d - 1) > 1e-12)) {
        throw SdrError(ErrorCode::RankDeficient, "method matrix has rank below d = " + std::to_string(d));
    }
    return orthonormalize(eig.vectors.leftCols(d));
}

Basis to_original_coords(const Basis& e, const StandardizedSample& s) {
    if (s.whitener.cols() != e.ambient_dim()) {
        throw SdrError(ErrorCode::DimensionMismatch, "to_original_coords: whitener and basis disagree");
    }
    return orthonormalize(s.whitener * e.columns());
}

namespace {

SubspaceEstimate eigen_estimate(Method method, const Matrix& m, const StandardizedSample& s, int d) {
    const SymEig eig = sym_eig(m);
    Basis basis = leading_subspace(eig, d);
    Basis orig = to_original_coords(basis, s);
    return SubspaceEstimate{std::move(basis), std::move(orig), method, 1, true, eig.values, 0};
}

SliceStats plain_stats(const StandardizedSample& s, const SliceAssignment& a) {
    return slice_stats(s, a, Matrix::Identity(s.p(), s.p()));
}

}  // namespace

SubspaceEstimate estimate_sir(const StandardizedSample& s, const SliceAssignment& a, const EstimatorConfig& cfg) {
    cfg.validate(s.p(), false);
    return eigen_estimate(Method::sir, sir_matrix(plain_stats(s, a)), s, cfg.dim);
}

SubspaceEstimate estimate_save(const StandardizedSample& s, const SliceAssignment& a, const EstimatorConfig& cfg) {
    cfg.validate(s.p(), false);
    return eigen_estimate(Method::save, save_matrix(plain_stats(s, a)), s, cfg.dim);
}

SubspaceEstimate estimate_dr(const StandardizedSample& s, const SliceAssignment& a, const EstimatorConfig& cfg) {
    cfg.validate(s.p(), false);
    return eigen_estimate(Method::dr, dr_matrix(plain_stats(s, a)), s, cfg.dim);
}

SubspaceEstimate estimate(Method m, const StandardizedSample& s, const SliceAssignment& a,
                          const EstimatorConfig& cfg) {
    switch (m) {
        case Method::sir: return estimate_sir(s, a, cfg);
        case Method::save: return estimate_save(s, a, cfg);
        case Method::dr: return estimate_dr(s, a, cfg);
        case Method::tf1: return estimate_tf1(s, a, cfg);
        case Method::tf2: return estimate_tf2(s, a, cfg);
    }
    throw SdrError(ErrorCode::InvalidInput, "unknown method");
}

}  // namespace tfsdr
