#pragma once

#include <optional>
#include <span>
#include <vector>

#include "halfspace/core.hpp"

namespace halfspace {

/// exp(-gamma ||x1 - x2||^2).
double rbf_kernel(std::span<const double> x1, std::span<const double> x2, double gamma);

/// 1 / (d * var), the variance pooled over every feature entry. Falls back to
/// 1 / d when the features are constant.
double default_gamma(std::span<const Vector> points);

struct OcSvmOptions {
  double tolerance = 1e-6;      // stop when the maximal KKT violation drops below this
  long max_iterations = 100000;
};

/// Fitted nu-one-class SVM in dual form: f(x) = sum_i alpha_i K(s_i, x) - offset.
struct OcSvmModel {
  Vector alphas;                     // strictly positive dual weights, one per support point
  std::vector<Vector> support_points;
  double offset = 0.0;
  double gamma = 1.0;
  double nu = 0.5;

  std::size_t dim() const { return support_points.empty() ? 0 : support_points.front().size(); }
};

struct OcSvmFit {
  OcSvmModel model;
  Vector dual;                 // alpha for every training point, zeros included
  double dual_objective = 0.0; // 1/2 alpha' K alpha
  double max_violation = 0.0;
  long iterations = 0;
  bool converged = false;
};

/// Solves
///   min 1/2 sum_ij a_i a_j K(x_i, x_j)  s.t.  0 <= a_i <= 1/(nu N),  sum a_i = 1
/// by SMO with maximal-violating-pair selection. Throws InfeasibleError when
/// nu * N < 1 or N < 2. A run that hits the iteration cap is returned with
/// converged == false.
OcSvmFit fit_ocsvm(std::span<const Vector> points, double nu, double gamma, OcSvmOptions opts = {});

/// Positive inside the estimated support, negative outside.
double decision_value(const OcSvmModel& model, std::span<const double> x);

/// 1/2 a' K a for an arbitrary dual vector over `points`.
double ocsvm_dual_objective(std::span<const Vector> points, std::span<const double> alphas, double gamma);

/// One detector per label. An example is scored by the model of the class it
/// claims to belong to.
struct PerClassDetector {
  OcSvmModel model_pos;
  OcSvmModel model_neg;
  double slope = 1.0;  // k in rate = 1 / (1 + exp(k f))

  const OcSvmModel& model_for(Label y) const { return y == Label::positive ? model_pos : model_neg; }
};

struct DetectorOptions {
  OcSvmOptions solver;
  /// Fit on these indices only (a trusted subset). Unset means all data.
  std::optional<std::vector<std::size_t>> fit_indices;
};

/// Fits both per-class models with hp.nu and hp.gamma (or default_gamma over
/// the fitting data), then calibrates the slope on the fitting data.
PerClassDetector fit_detector(const Dataset& data, const HyperParams& hp, const DetectorOptions& opts = {});

double noise_rate_from_decision(double decision, double slope);

/// Slope k such that the 90th percentile of `decisions` maps to rate 0.1.
/// When that percentile is not positive, the largest |decision| is used in
/// its place so that k stays finite and positive.
double calibrate_slope(std::span<const double> decisions);

/// Decision value of every example under its own label's model.
Vector own_class_decisions(const PerClassDetector& detector, const Dataset& data);

NoiseProfile noise_profile(const PerClassDetector& detector, const Dataset& data);

}  // namespace halfspace
