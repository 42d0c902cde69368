#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "halfspace/core.hpp"
#include "halfspace/noise.hpp"
#include "halfspace/optim.hpp"

namespace halfspace {

enum class NoisePolicy { skip, downweight, off };

std::string to_string(NoisePolicy policy);
NoisePolicy parse_policy(const std::string& name);

struct TrainConfig {
  HyperParams hp;
  OptimizerKind optimizer = OptimizerKind::adam;
  NoisePolicy policy = NoisePolicy::downweight;
  std::uint64_t seed = 0;
  /// 0 selects full-batch iteration; otherwise iterations are shuffled epochs.
  std::size_t batch_size = 0;
  /// Re-run the detector before every objective evaluation instead of once up front.
  bool refit_each_iteration = false;
  DetectorOptions detector;
  /// Use these rates instead of running the detector.
  std::optional<NoiseProfile> fixed_profile;

  void validate() const;
};

struct TrainedModel {
  LinearModel model;
  ConvergenceRecord convergence;
  NoiseProfile noise;
  Vector weights;              // effective per-example weight
  std::size_t skipped_count = 0;
};

/// off -> 1; downweight -> 1 - rate; skip -> 0 if rate > tau else 1.
double effective_weight(double rate, NoisePolicy policy, double tau);

/// Scores every example, turns the scores into weights, and minimizes
///   sum(w_i l_i) / sum(w_i) + lambda * mean(rate) + elastic net
/// from w = 0 with the configured optimizer. With policy off the detector is
/// never run and the data term is the unweighted mean.
TrainedModel adaptive_fit(const Dataset& data, const TrainConfig& cfg);

}  // namespace halfspace
