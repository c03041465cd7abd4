#include "tfsdr/numerics.hpp"

#include "tfsdr/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace tfsdr {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::NonSymmetric: return "NonSymmetric";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::TooManySlices: return "TooManySlices";
        case ErrorCode::EmptySlice: return "EmptySlice";
        case ErrorCode::DegenerateSlice: return "DegenerateSlice";
        case ErrorCode::DegenerateGap: return "DegenerateGap";
        case ErrorCode::AllFailed: return "AllFailed";
        case ErrorCode::Io: return "Io";
        case ErrorCode::Config: return "Config";
    }
    return "Unknown";
}

namespace {

// Rotation applied to the pair of entries (g, h) = (a(i,j), a(k,l)).
inline void rotate(Matrix& a, Eigen::Index i, Eigen::Index j, Eigen::Index k, Eigen::Index l,
                   double s, double tau) {
    const double g = a(i, j);
    const double h = a(k, l);
    a(i, j) = g - s * (h + g * tau);
    a(k, l) = h + s * (g - h * tau);
}

}  // namespace

SymEig sym_eig(const Matrix& m, int max_sweeps) {
    if (m.rows() != m.cols()) {
        throw SdrError(ErrorCode::DimensionMismatch, "sym_eig: matrix is not square");
    }
    const Eigen::Index n = m.rows();
    if (n == 0) return {Vector(0), Matrix(0, 0)};
    if (!m.allFinite()) throw SdrError(ErrorCode::InvalidInput, "sym_eig: non-finite entry");

    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw SdrError(ErrorCode::NonSymmetric, "sym_eig: asymmetry exceeds 1e-9 relative");
    }

    // Upper triangle of `a` holds the working matrix; rotations follow the
    // classic threshold cyclic scheme with diagonal accumulators.
    Matrix a = 0.5 * (m + m.transpose());
    Matrix v = Matrix::Identity(n, n);
    Vector d = a.diagonal();
    Vector b = d;
    Vector z = Vector::Zero(n);

    bool converged = false;
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n - 1; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += std::abs(a(p, q));
        if (off == 0.0) {
            converged = true;
            break;
        }
        const double thresh = sweep < 4 ? 0.2 * off / static_cast<double>(n * n) : 0.0;

        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double g = 100.0 * std::abs(a(p, q));
                if (sweep > 4 && std::abs(d(p)) + g == std::abs(d(p)) &&
                    std::abs(d(q)) + g == std::abs(d(q))) {
                    a(p, q) = 0.0;
                    continue;
                }
                if (std::abs(a(p, q)) <= thresh) continue;

                double h = d(q) - d(p);
                double t;
                if (std::abs(h) + g == std::abs(h)) {
                    t = a(p, q) / h;
                } else {
                    const double theta = 0.5 * h / a(p, q);
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                h = t * a(p, q);
                z(p) -= h;
                z(q) += h;
                d(p) -= h;
                d(q) += h;
                a(p, q) = 0.0;
                for (Eigen::Index j = 0; j < p; ++j) rotate(a, j, p, j, q, s, tau);
                for (Eigen::Index j = p + 1; j < q; ++j) rotate(a, p, j, j, q, s, tau);
                for (Eigen::Index j = q + 1; j < n; ++j) rotate(a, p, j, q, j, s, tau);
                for (Eigen::Index j = 0; j < n; ++j) rotate(v, j, p, j, q, s, tau);
            }
        }
        b += z;
        d = b;
        z.setZero();
    }
    if (!converged) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n - 1; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += std::abs(a(p, q));
        if (off != 0.0) {
            throw SdrError(ErrorCode::NoConvergence,
                           "sym_eig: Jacobi sweeps exhausted budget of " + std::to_string(max_sweeps));
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index l, Eigen::Index r) { return d(l) > d(r); });

    SymEig out{Vector(n), Matrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.values(k) = d(src);
        Eigen::Index arg = 0;
        v.col(src).cwiseAbs().maxCoeff(&arg);
        const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
        out.vectors.col(k) = sign * v.col(src);
    }
    return out;
}

Matrix inv_sqrt_psd(const Matrix& m, double floor) {
    if (!(floor > 0.0)) throw SdrError(ErrorCode::InvalidInput, "inv_sqrt_psd: floor must be positive");
    const SymEig eig = sym_eig(m);
    const Eigen::Index p = eig.values.size();
    Eigen::Index below = 0;
    Vector scaled(p);
    for (Eigen::Index k = 0; k < p; ++k) {
        if (eig.values(k) < floor) ++below;
        scaled(k) = 1.0 / std::sqrt(std::max(eig.values(k), floor));
    }
    if (p > 0 && below > p - 1) {
        throw SdrError(ErrorCode::Degenerate, "inv_sqrt_psd: every eigenvalue is below the floor");
    }
    Matrix out = eig.vectors * scaled.asDiagonal() * eig.vectors.transpose();
    return 0.5 * (out + out.transpose());
}

Matrix inv_sqrt_psd(const Matrix& m) {
    const SymEig eig = sym_eig(m);
    const double top = eig.values.size() > 0 ? eig.values(0) : 0.0;
    if (!(top > 0.0)) throw SdrError(ErrorCode::Degenerate, "inv_sqrt_psd: matrix has no positive eigenvalue");
    return inv_sqrt_psd(m, 1e-10 * top);
}

Matrix Basis::complement_projection() const {
    const Eigen::Index p = ambient_dim();
    return Matrix::Identity(p, p) - projection();
}

Basis orthonormalize(const Matrix& b) {
    if (b.cols() == 0 || b.cols() > b.rows()) {
        throw SdrError(ErrorCode::RankDeficient, "orthonormalize: need 1 <= d <= p columns");
    }
    if (!b.allFinite()) throw SdrError(ErrorCode::InvalidInput, "orthonormalize: non-finite entry");
    Matrix q = b;
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const double original = b.col(k).norm();
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < k; ++j) q.col(k) -= q.col(j).dot(q.col(k)) * q.col(j);
        }
        const double residual = q.col(k).norm();
        if (!(original > 0.0) || residual <= 1e-10 * original) {
            throw SdrError(ErrorCode::RankDeficient,
                           "orthonormalize: column " + std::to_string(k) + " is numerically dependent");
        }
        q.col(k) /= residual;
    }
    return Basis(std::move(q));
}

Basis axis_basis(Eigen::Index p, std::initializer_list<Eigen::Index> axes) {
    Matrix cols = Matrix::Zero(p, static_cast<Eigen::Index>(axes.size()));
    Eigen::Index k = 0;
    for (Eigen::Index axis : axes) {
        if (axis < 0 || axis >= p) throw SdrError(ErrorCode::InvalidInput, "axis_basis: axis out of range");
        cols(axis, k++) = 1.0;
    }
    return orthonormalize(cols);
}

double subspace_distance(const Basis& a, const Basis& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw SdrError(ErrorCode::DimensionMismatch, "subspace_distance: ambient dimensions differ");
    }
    const double cross = (a.columns().transpose() * b.columns()).squaredNorm();
    const double dist = static_cast<double>(a.dim() + b.dim()) - 2.0 * cross;
    return std::max(0.0, dist);
}

double lower_median(Vector values) {
    if (values.size() == 0) throw SdrError(ErrorCode::InvalidInput, "lower_median: empty input");
    std::sort(values.begin(), values.end());
    return values((values.size() - 1) / 2);
}

}  // namespace tfsdr
