#include "halfspace/loss.hpp"

#include <algorithm>
#include <cmath>

namespace halfspace {

double Gradient::inf_norm() const {
  double m = std::abs(b);
  for (double g : w) m = std::max(m, std::abs(g));
  return m;
}

bool Gradient::finite() const { return all_finite(w) && std::isfinite(b); }

double logistic_loss(double margin) {
  const double z = -margin;
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

double logistic_loss_slope(double margin) {
  if (margin >= 0.0) {
    const double e = std::exp(-margin);
    return -e / (1.0 + e);
  }
  return -1.0 / (1.0 + std::exp(margin));
}

double base_loss(const LinearModel& model, const LabeledExample& example) {
  return logistic_loss(sign_of(example.y()) * model.margin(example.x()));
}

double elastic_net_penalty(std::span<const double> w, double alpha, double rho) {
  double l2 = 0.0;
  double l1 = 0.0;
  for (double v : w) {
    l2 += v * v;
    l1 += std::abs(v);
  }
  return alpha * ((1.0 - rho) / 2.0 * l2 + rho * l1);
}

Vector elastic_net_gradient(std::span<const double> w, double alpha, double rho) {
  Vector g(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double s = w[j] > 0.0 ? 1.0 : (w[j] < 0.0 ? -1.0 : 0.0);
    g[j] = alpha * (1.0 - rho) * w[j] + alpha * rho * s;
  }
  return g;
}

namespace {

void check_inputs(const LinearModel& model, const Dataset& data, const NoiseProfile& noise,
                  std::span<const double> weights) {
  if (model.dim() != data.dim()) throw ValidationError("model and dataset dimensions differ");
  if (noise.size() != data.size()) {
    throw ValidationError("noise profile has " + std::to_string(noise.size()) + " entries for " +
                          std::to_string(data.size()) + " examples");
  }
  if (!weights.empty() && weights.size() != data.size()) throw ValidationError("weight vector length mismatch");
}

double weight_sum(std::span<const double> weights) {
  double s = 0.0;
  for (double w : weights) s += w;
  if (!(s > 0.0)) throw ValidationError("all example weights are zero; nothing to learn from");
  return s;
}

}  // namespace

ObjectiveValue composite_objective(const LinearModel& model, const Dataset& data, const NoiseProfile& noise,
                                   const HyperParams& hp, std::span<const double> weights) {
  check_inputs(model, data, noise, weights);
  double sum = 0.0;
  double norm = 0.0;
  if (weights.empty()) {
    for (const auto& e : data.examples()) sum += base_loss(model, e);
    norm = static_cast<double>(data.size());
  } else {
    for (std::size_t i = 0; i < data.size(); ++i)
      if (weights[i] != 0.0) sum += weights[i] * base_loss(model, data[i]);
    norm = weight_sum(weights);
  }
  ObjectiveValue out;
  out.data_term = sum / norm;
  out.noise_term = hp.lambda * noise.mean();
  out.penalty_term = elastic_net_penalty(model.w(), hp.alpha, hp.rho);
  out.total = out.data_term + out.noise_term + out.penalty_term;
  return out;
}

Gradient composite_gradient(const LinearModel& model, const Dataset& data, const NoiseProfile& noise,
                            const HyperParams& hp, std::span<const double> weights) {
  check_inputs(model, data, noise, weights);
  const std::size_t d = data.dim();
  Gradient g{Vector(d, 0.0), 0.0};
  double norm = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double wi = weights.empty() ? 1.0 : weights[i];
    if (wi == 0.0) continue;
    const auto& e = data[i];
    const double y = sign_of(e.y());
    const double c = wi * y * logistic_loss_slope(y * model.margin(e.x()));
    for (std::size_t j = 0; j < d; ++j) g.w[j] += c * e.x()[j];
    g.b += c;
  }
  norm = weights.empty() ? static_cast<double>(data.size()) : weight_sum(weights);
  const Vector pen = elastic_net_gradient(model.w(), hp.alpha, hp.rho);
  for (std::size_t j = 0; j < d; ++j) g.w[j] = g.w[j] / norm + pen[j];
  g.b /= norm;
  return g;
}

}  // namespace halfspace
