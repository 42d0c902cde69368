#include "halfspace/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace halfspace {

std::string to_string(OptimizerKind kind) { return kind == OptimizerKind::adam ? "adam" : "sgd"; }

OptimizerKind parse_optimizer(const std::string& name) {
  if (name == "adam") return OptimizerKind::adam;
  if (name == "sgd") return OptimizerKind::sgd;
  throw ValidationError("unknown optimizer '" + name + "' (expected adam or sgd)");
}

namespace {

void require_finite(const Gradient& grad, std::size_t dim) {
  if (grad.w.size() != dim) throw ValidationError("gradient dimension mismatch");
  if (!grad.finite()) throw NumericalError("non-finite gradient");
}

}  // namespace

LinearModel sgd_step(const LinearModel& model, const Gradient& grad, const HyperParams& hp) {
  require_finite(grad, model.dim());
  Vector w = model.w();
  for (std::size_t j = 0; j < w.size(); ++j) w[j] -= hp.eta * grad.w[j];
  return LinearModel(std::move(w), model.b() - hp.eta * grad.b);
}

std::pair<LinearModel, AdamState> adam_step(const LinearModel& model, const Gradient& grad, AdamState state,
                                            const HyperParams& hp) {
  const std::size_t d = model.dim();
  require_finite(grad, d);
  if (state.t < 0) throw ValidationError("Adam step counter must be nonnegative");
  if (state.m.size() != d + 1 || state.v.size() != d + 1) throw ValidationError("Adam state dimension mismatch");

  state.t += 1;
  const double c1 = 1.0 - std::pow(hp.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(hp.beta2, static_cast<double>(state.t));

  Vector w = model.w();
  double b = model.b();
  for (std::size_t j = 0; j <= d; ++j) {
    const double g = j < d ? grad.w[j] : grad.b;
    state.m[j] = hp.beta1 * state.m[j] + (1.0 - hp.beta1) * g;
    state.v[j] = hp.beta2 * state.v[j] + (1.0 - hp.beta2) * g * g;
    const double m_hat = state.m[j] / c1;
    const double v_hat = state.v[j] / c2;
    const double step = hp.eta * m_hat / std::sqrt(v_hat + hp.epsilon);
    if (j < d) {
      w[j] -= step;
    } else {
      b -= step;
    }
  }
  return {LinearModel(std::move(w), b), std::move(state)};
}

namespace {

// Applies the stopping rule and keeps the trace and the best iterate.
class ConvergenceMonitor {
 public:
  ConvergenceMonitor(const HyperParams& hp, const LinearModel& initial, const Evaluation& first)
      : tol_(hp.tol), best_(initial), best_objective_(first.objective), previous_(first.objective) {}

  // Returns true when the loop should stop.
  bool observe(const LinearModel& model, const Evaluation& ev) {
    record_.iterations_used += 1;
    record_.objective_trace.push_back(ev.objective);
    if (!std::isfinite(ev.objective) || !ev.gradient.finite()) {
      record_.diverged = true;
      return true;
    }
    if (ev.objective < best_objective_ || !std::isfinite(best_objective_)) {
      best_objective_ = ev.objective;
      best_ = model;
    }
    const double scale = std::max(std::abs(previous_), std::numeric_limits<double>::min());
    const double relative_change = std::abs(previous_ - ev.objective) / scale;
    streak_ = relative_change < tol_ ? streak_ + 1 : 0;
    previous_ = ev.objective;
    if (streak_ >= 3 || ev.gradient.inf_norm() < tol_) {
      record_.converged = true;
      return true;
    }
    return false;
  }

  OptimResult finish(LinearModel current, double current_objective) {
    if (record_.diverged) {
      record_.final_objective = best_objective_;
      return {std::move(best_), std::move(record_)};
    }
    record_.final_objective = current_objective;
    return {std::move(current), std::move(record_)};
  }

  ConvergenceRecord& record() { return record_; }

 private:
  double tol_;
  LinearModel best_;
  double best_objective_;
  double previous_;
  int streak_ = 0;
  ConvergenceRecord record_;
};

class Stepper {
 public:
  Stepper(OptimizerKind kind, std::size_t dim, const HyperParams& hp)
      : kind_(kind), hp_(hp), state_(AdamState::zeros(dim)) {}

  LinearModel step(const LinearModel& model, const Gradient& grad) {
    if (kind_ == OptimizerKind::sgd) return sgd_step(model, grad, hp_);
    auto [next, state] = adam_step(model, grad, std::move(state_), hp_);
    state_ = std::move(state);
    return next;
  }

 private:
  OptimizerKind kind_;
  const HyperParams& hp_;
  AdamState state_;
};

}  // namespace

OptimResult run_until_converged(const ObjectiveFn& objective, LinearModel initial, OptimizerKind optimizer,
                                const HyperParams& hp) {
  hp.validate();
  Evaluation ev = objective(initial);
  ConvergenceMonitor monitor(hp, initial, ev);
  if (!std::isfinite(ev.objective) || !ev.gradient.finite()) {
    monitor.record().diverged = true;
    return monitor.finish(initial, ev.objective);
  }
  if (ev.gradient.inf_norm() < hp.tol) {
    monitor.record().converged = true;
    return monitor.finish(initial, ev.objective);
  }

  Stepper stepper(optimizer, initial.dim(), hp);
  LinearModel model = std::move(initial);
  for (int it = 0; it < hp.max_iterations; ++it) {
    model = stepper.step(model, ev.gradient);
    ev = objective(model);
    if (monitor.observe(model, ev)) break;
  }
  return monitor.finish(std::move(model), ev.objective);
}

OptimResult run_minibatch_epochs(const ObjectiveFn& objective, const BatchGradientFn& batch_gradient,
                                 std::size_t n, std::size_t batch_size, LinearModel initial,
                                 OptimizerKind optimizer, const HyperParams& hp, std::uint64_t seed) {
  hp.validate();
  if (n == 0 || batch_size == 0) throw ValidationError("mini-batch mode needs n > 0 and batch_size > 0");
  Evaluation ev = objective(initial);
  ConvergenceMonitor monitor(hp, initial, ev);
  if (!std::isfinite(ev.objective) || !ev.gradient.finite()) {
    monitor.record().diverged = true;
    return monitor.finish(initial, ev.objective);
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Stepper stepper(optimizer, initial.dim(), hp);
  LinearModel model = std::move(initial);
  for (int epoch = 0; epoch < hp.max_iterations; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < n; start += batch_size) {
      const std::size_t len = std::min(batch_size, n - start);
      const Gradient g = batch_gradient(model, std::span<const std::size_t>(order).subspan(start, len));
      if (!g.finite()) {
        monitor.record().diverged = true;
        return monitor.finish(std::move(model), ev.objective);
      }
      model = stepper.step(model, g);
    }
    ev = objective(model);
    if (monitor.observe(model, ev)) break;
  }
  return monitor.finish(std::move(model), ev.objective);
}

}  // namespace halfspace
