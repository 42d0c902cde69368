#pragma once

#include <span>

#include "halfspace/core.hpp"

namespace halfspace {

/// Gradient with respect to (w, b).
struct Gradient {
  Vector w;
  double b = 0.0;

  double inf_norm() const;
  bool finite() const;
};

/// Objective split into its three additive parts.
struct ObjectiveValue {
  double total = 0.0;
  double data_term = 0.0;
  double noise_term = 0.0;
  double penalty_term = 0.0;
};

/// ln(1 + exp(-m)) for a signed margin m = y (w.x + b), stable for large |m|.
double logistic_loss(double margin);
/// d/dm ln(1 + exp(-m)) = -1 / (1 + exp(m)).
double logistic_loss_slope(double margin);

double base_loss(const LinearModel& model, const LabeledExample& example);

/// alpha ((1 - rho)/2 ||w||^2 + rho ||w||_1); the bias is not penalized.
double elastic_net_penalty(std::span<const double> w, double alpha, double rho);

/// Elastic net (sub)gradient, with sign(0) = 0 for the L1 part.
Vector elastic_net_gradient(std::span<const double> w, double alpha, double rho);

/// Data term + lambda * mean(noise rate) + elastic net penalty.
///
/// With empty `weights` the data term is the plain mean of the logistic
/// losses. With weights it is sum(w_i l_i) / sum(w_i); an all-zero weight
/// vector is rejected. The noise term is reported but never weighted.
ObjectiveValue composite_objective(const LinearModel& model, const Dataset& data, const NoiseProfile& noise,
                                   const HyperParams& hp, std::span<const double> weights = {});

/// Gradient of composite_objective. The noise term is constant in w and
/// contributes nothing, so the result does not depend on lambda or on the
/// noise profile (the profile is only checked for length).
Gradient composite_gradient(const LinearModel& model, const Dataset& data, const NoiseProfile& noise,
                            const HyperParams& hp, std::span<const double> weights = {});

}  // namespace halfspace
