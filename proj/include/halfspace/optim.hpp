#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "halfspace/core.hpp"
#include "halfspace/loss.hpp"

namespace halfspace {

enum class OptimizerKind { adam, sgd };

std::string to_string(OptimizerKind kind);
OptimizerKind parse_optimizer(const std::string& name);

/// Adam moment estimates. Coordinates 0..d-1 are the weights, coordinate d the bias.
struct AdamState {
  Vector m;
  Vector v;
  std::int64_t t = 0;

  static AdamState zeros(std::size_t model_dim) { return {Vector(model_dim + 1, 0.0), Vector(model_dim + 1, 0.0), 0}; }
};

/// w <- w - eta * grad. Throws NumericalError on a non-finite gradient.
LinearModel sgd_step(const LinearModel& model, const Gradient& grad, const HyperParams& hp);

/// One Adam update with bias correction. The stabilizer sits inside the
/// square root: w <- w - eta * m_hat / sqrt(v_hat + epsilon).
std::pair<LinearModel, AdamState> adam_step(const LinearModel& model, const Gradient& grad, AdamState state,
                                            const HyperParams& hp);

struct ConvergenceRecord {
  int iterations_used = 0;
  bool converged = false;
  bool diverged = false;
  double final_objective = 0.0;
  std::vector<double> objective_trace;  // objective after each iteration

  bool operator==(const ConvergenceRecord&) const = default;
};

struct Evaluation {
  double objective = 0.0;
  Gradient gradient;
};

using ObjectiveFn = std::function<Evaluation(const LinearModel&)>;
using BatchGradientFn = std::function<Gradient(const LinearModel&, std::span<const std::size_t>)>;

struct OptimResult {
  LinearModel model;
  ConvergenceRecord record;
};

/// Full-batch iteration. One iteration = one optimizer step followed by an
/// evaluation of the new iterate. Stops when
///   - |relative objective change| < tol for 3 consecutive iterations, or
///   - the gradient infinity norm drops below tol, or
///   - hp.max_iterations iterations have run.
/// A non-finite objective or gradient marks the run diverged and the best
/// iterate seen so far is returned.
OptimResult run_until_converged(const ObjectiveFn& objective, LinearModel initial, OptimizerKind optimizer,
                                const HyperParams& hp);

/// Mini-batch variant: one iteration is one shuffled pass over n examples in
/// batches of batch_size; the stopping rule is applied to the full objective
/// after each pass.
OptimResult run_minibatch_epochs(const ObjectiveFn& objective, const BatchGradientFn& batch_gradient,
                                 std::size_t n, std::size_t batch_size, LinearModel initial,
                                 OptimizerKind optimizer, const HyperParams& hp, std::uint64_t seed);

}  // namespace halfspace
