#pragma once

#include "tfsdr/numerics.hpp"
#include "tfsdr/rng.hpp"

#include <optional>
#include <string_view>

namespace tfsdr {

enum class PredictorKind {
    gaussian,           ///< iid N(0, 1) entries
    spherical_mixture,  ///< rho * U, U uniform on the sphere, rho a two-shell radius
    nonlinear_coupled,  ///< spherical mixture with X1, X2 rewritten from X3, X4
};

std::string_view to_string(PredictorKind k);
std::optional<PredictorKind> parse_predictor_kind(std::string_view text);

struct PredictorSpec {
    PredictorKind kind = PredictorKind::gaussian;
    Eigen::Index p = 6;
};

enum class ModelId { I, II, III, IV, V, VI, VIb, VII };

std::string_view to_string(ModelId m);
std::optional<ModelId> parse_model(std::string_view text);

struct ModelSpec {
    ModelId id;

    /// Predictor family the model is studied with by default.
    PredictorKind implied_predictors() const;
    int true_dim() const { return id == ModelId::IV ? 1 : 2; }
};

/// Draws an n x p predictor matrix. Sphere directions and the coupling
/// noise u come from `streams.predictors`; the radial mixture (shell
/// choice and W1, W2) from `streams.mixture`.
Matrix sample_predictors(const PredictorSpec& spec, Eigen::Index n, ReplicateStreams& streams);

/// Model response for given predictors and noise values eps.
Vector model_response(ModelId m, const Matrix& x, const Vector& eps);

/// Draws eps ~ N(0, 1) per row from `noise` and evaluates the model.
Vector apply_model(const ModelSpec& m, const Matrix& x, Rng& noise);

/// Axis-aligned true central subspace: span(e1) for Model IV, otherwise span(e1, e2).
Basis true_cs(const ModelSpec& m, Eigen::Index p);

}  // namespace tfsdr
