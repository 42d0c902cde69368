#include "halfspace/train.hpp"

#include <algorithm>

#include "halfspace/loss.hpp"

namespace halfspace {

std::string to_string(NoisePolicy policy) {
  switch (policy) {
    case NoisePolicy::skip:
      return "skip";
    case NoisePolicy::downweight:
      return "downweight";
    case NoisePolicy::off:
      return "off";
  }
  return "off";
}

NoisePolicy parse_policy(const std::string& name) {
  if (name == "skip") return NoisePolicy::skip;
  if (name == "downweight") return NoisePolicy::downweight;
  if (name == "off") return NoisePolicy::off;
  throw ValidationError("unknown noise policy '" + name + "' (expected skip, downweight or off)");
}

void TrainConfig::validate() const { hp.validate(); }

double effective_weight(double rate, NoisePolicy policy, double tau) {
  switch (policy) {
    case NoisePolicy::off:
      return 1.0;
    case NoisePolicy::downweight:
      return 1.0 - rate;
    case NoisePolicy::skip:
      return rate > tau ? 0.0 : 1.0;
  }
  return 1.0;
}

namespace {

struct Scoring {
  NoiseProfile profile;
  Vector weights;  // empty when the policy is off
};

Scoring score(const Dataset& data, const TrainConfig& cfg) {
  if (cfg.policy == NoisePolicy::off) return {NoiseProfile::zeros(data.size()), {}};
  NoiseProfile profile = cfg.fixed_profile ? *cfg.fixed_profile
                                           : noise_profile(fit_detector(data, cfg.hp, cfg.detector), data);
  if (profile.size() != data.size()) throw ValidationError("noise profile length does not match the dataset");
  Vector weights(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) weights[i] = effective_weight(profile[i], cfg.policy, cfg.hp.tau);
  if (std::none_of(weights.begin(), weights.end(), [](double w) { return w > 0.0; })) {
    throw ValidationError("every example was judged noisy (all weights are zero); the data is unlearnable at tau = " +
                          format_double(cfg.hp.tau));
  }
  return {std::move(profile), std::move(weights)};
}

}  // namespace

TrainedModel adaptive_fit(const Dataset& data, const TrainConfig& cfg) {
  cfg.validate();
  Scoring scoring = score(data, cfg);

  auto current = [&]() -> const Scoring& {
    if (cfg.refit_each_iteration && cfg.policy != NoisePolicy::off && !cfg.fixed_profile) scoring = score(data, cfg);
    return scoring;
  };

  const ObjectiveFn objective = [&](const LinearModel& model) {
    const Scoring& s = current();
    return Evaluation{composite_objective(model, data, s.profile, cfg.hp, s.weights).total,
                      composite_gradient(model, data, s.profile, cfg.hp, s.weights)};
  };

  OptimResult result = [&] {
    LinearModel start(data.dim());
    if (cfg.batch_size == 0) return run_until_converged(objective, std::move(start), cfg.optimizer, cfg.hp);
    const BatchGradientFn batch = [&](const LinearModel& model, std::span<const std::size_t> idx) {
      const Dataset sub = data.subset(idx);
      Vector w;
      if (!scoring.weights.empty()) {
        w.reserve(idx.size());
        for (auto i : idx) w.push_back(scoring.weights[i]);
        // A batch made only of skipped points carries no gradient.
        if (std::none_of(w.begin(), w.end(), [](double v) { return v > 0.0; })) {
          return Gradient{elastic_net_gradient(model.w(), cfg.hp.alpha, cfg.hp.rho), 0.0};
        }
      }
      return composite_gradient(model, sub, NoiseProfile::zeros(sub.size()), cfg.hp, w);
    };
    return run_minibatch_epochs(objective, batch, data.size(), cfg.batch_size, std::move(start), cfg.optimizer,
                                cfg.hp, cfg.seed);
  }();

  TrainedModel out{std::move(result.model), std::move(result.record), scoring.profile, {}, 0};
  out.weights = scoring.weights.empty() ? Vector(data.size(), 1.0) : scoring.weights;
  if (cfg.policy == NoisePolicy::skip) {
    out.skipped_count =
        static_cast<std::size_t>(std::count(out.weights.begin(), out.weights.end(), 0.0));
  }
  return out;
}

}  // namespace halfspace
