#include "tfsdr/simulation.hpp"

#include "tfsdr/error.hpp"

#include <cmath>

namespace tfsdr {

std::string_view to_string(PredictorKind k) {
    switch (k) {
        case PredictorKind::gaussian: return "gaussian";
        case PredictorKind::spherical_mixture: return "spherical";
        case PredictorKind::nonlinear_coupled: return "nonlinear";
    }
    return "unknown";
}

std::optional<PredictorKind> parse_predictor_kind(std::string_view text) {
    for (auto k : {PredictorKind::gaussian, PredictorKind::spherical_mixture, PredictorKind::nonlinear_coupled}) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

std::string_view to_string(ModelId m) {
    switch (m) {
        case ModelId::I: return "I";
        case ModelId::II: return "II";
        case ModelId::III: return "III";
        case ModelId::IV: return "IV";
        case ModelId::V: return "V";
        case ModelId::VI: return "VI";
        case ModelId::VIb: return "VIb";
        case ModelId::VII: return "VII";
    }
    return "unknown";
}

std::optional<ModelId> parse_model(std::string_view text) {
    for (auto m : {ModelId::I, ModelId::II, ModelId::III, ModelId::IV, ModelId::V, ModelId::VI, ModelId::VIb,
                   ModelId::VII}) {
        if (to_string(m) == text) return m;
    }
    return std::nullopt;
}

PredictorKind ModelSpec::implied_predictors() const {
    switch (id) {
        case ModelId::I:
        case ModelId::II:
        case ModelId::VIb:
        case ModelId::VII: return PredictorKind::spherical_mixture;
        case ModelId::III: return PredictorKind::nonlinear_coupled;
        case ModelId::IV:
        case ModelId::V:
        case ModelId::VI: return PredictorKind::gaussian;
    }
    return PredictorKind::gaussian;
}

namespace {

void fill_spherical(Matrix& x, ReplicateStreams& streams) {
    const Eigen::Index p = x.cols();
    Vector g(p);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        double norm = 0.0;
        do {
            for (Eigen::Index j = 0; j < p; ++j) g(j) = streams.predictors.normal();
            norm = g.norm();
        } while (norm == 0.0);
        const int shell = streams.mixture.bernoulli(0.5);
        const double w1 = streams.mixture.normal();
        const double w2 = streams.mixture.normal();
        const double rho = shell * std::abs(10.0 + 0.05 * w1) + (1 - shell) * std::abs(30.0 + 0.05 * w2);
        x.row(i) = (rho / norm) * g.transpose();
    }
}

}  // namespace

Matrix sample_predictors(const PredictorSpec& spec, Eigen::Index n, ReplicateStreams& streams) {
    if (n < 1 || spec.p < 1) throw SdrError(ErrorCode::InvalidInput, "sample_predictors: n and p must be positive");
    Matrix x(n, spec.p);
    switch (spec.kind) {
        case PredictorKind::gaussian:
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < spec.p; ++j) x(i, j) = streams.predictors.normal();
            break;
        case PredictorKind::spherical_mixture:
            fill_spherical(x, streams);
            break;
        case PredictorKind::nonlinear_coupled:
            if (spec.p < 4) throw SdrError(ErrorCode::InvalidInput, "nonlinear predictors need p >= 4");
            fill_spherical(x, streams);
            for (Eigen::Index i = 0; i < n; ++i) {
                const double x3 = x(i, 2);
                const double x4 = x(i, 3);
                const double u = streams.predictors.normal();
                x(i, 0) = 0.2 * x3 + 0.2 * (x4 + 10.0) * (x4 + 10.0) + 0.2 * u;
                x(i, 1) = 0.1 + 0.1 * (x3 + x4) + 0.3 * x3 * x3 + 0.2 * u;
            }
            break;
    }
    return x;
}

Vector model_response(ModelId m, const Matrix& x, const Vector& eps) {
    if (x.rows() != eps.size()) throw SdrError(ErrorCode::DimensionMismatch, "model_response: noise length");
    if (x.cols() < 2) throw SdrError(ErrorCode::InvalidInput, "model_response: need at least two predictors");
    const auto sign = [](double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); };
    Vector y(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double x1 = x(i, 0);
        const double x2 = x(i, 1);
        const double e = eps(i);
        switch (m) {
            case ModelId::I:
            case ModelId::III: y(i) = x1 / (0.5 + (x2 + 1.5) * (x2 + 1.5)) + 0.5 * e; break;
            case ModelId::II: y(i) = sign(x2) * std::abs(x1 / 2.0 + 5.0) + 0.5 * e; break;
            case ModelId::IV: y(i) = 4.0 * std::tanh(std::abs(x1) / 2.0) + 0.5 * e; break;
            case ModelId::V: y(i) = 0.4 * x1 * x1 + std::sqrt(std::abs(x2)) + 0.2 * e; break;
            case ModelId::VI: y(i) = 1.5 * x1 * x2 * e; break;
            case ModelId::VIb: y(i) = x1 * x2 * e; break;
            case ModelId::VII: y(i) = std::abs(x1) + (x2 / 4.0) * (x2 / 4.0) + 0.5 * e; break;
        }
    }
    return y;
}

Vector apply_model(const ModelSpec& m, const Matrix& x, Rng& noise) {
    Vector eps(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) eps(i) = noise.normal();
    return model_response(m.id, x, eps);
}

Basis true_cs(const ModelSpec& m, Eigen::Index p) {
    if (p < 2) throw SdrError(ErrorCode::InvalidInput, "true_cs: p must be at least 2");
    return m.true_dim() == 1 ? axis_basis(p, {0}) : axis_basis(p, {0, 1});
}

}  // namespace tfsdr
