#include <algorithm>
#include <random>

#include "doctest.h"
#include "halfspace/bench.hpp"
#include "halfspace/train.hpp"

using namespace halfspace;

namespace {

Dataset blobs(std::uint64_t seed, std::size_t per_class, double sep) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<LabeledExample> ex;
  for (std::size_t i = 0; i < per_class; ++i) {
    ex.emplace_back(Vector{sep + normal(rng), sep + normal(rng)}, Label::positive);
    ex.emplace_back(Vector{-sep + normal(rng), -sep + normal(rng)}, Label::negative);
  }
  return Dataset(std::move(ex));
}

// Flip a fraction of labels, returning the noisy set and the flipped indices.
std::pair<Dataset, std::vector<std::size_t>> flip_some(const Dataset& d, double frac, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(d.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(static_cast<std::size_t>(frac * static_cast<double>(d.size())));
  std::sort(idx.begin(), idx.end());
  std::vector<LabeledExample> ex = d.examples();
  for (auto i : idx) ex[i] = LabeledExample(ex[i].x(), flip(ex[i].y()));
  return {Dataset(std::move(ex)), idx};
}

}  // namespace

TEST_CASE("effective_weight") {
  CHECK(effective_weight(0.3, NoisePolicy::downweight, 0.9) == doctest::Approx(0.7));
  CHECK(effective_weight(0.95, NoisePolicy::skip, 0.9) == 0.0);
  CHECK(effective_weight(0.9, NoisePolicy::skip, 0.9) == 1.0);
  CHECK(effective_weight(0.95, NoisePolicy::off, 0.9) == 1.0);
  CHECK(parse_policy("skip") == NoisePolicy::skip);
  CHECK(to_string(NoisePolicy::downweight) == "downweight");
  CHECK_THROWS_AS(parse_policy("sometimes"), ValidationError);
}

TEST_CASE("policy off is bitwise the plain logistic baseline") {
  const Dataset d = blobs(3, 60, 1.0);
  for (auto kind : {OptimizerKind::adam, OptimizerKind::sgd}) {
    TrainConfig cfg;
    cfg.policy = NoisePolicy::off;
    cfg.optimizer = kind;
    cfg.hp.rho = 0.0;
    cfg.hp.max_iterations = 300;
    const TrainedModel a = adaptive_fit(d, cfg);
    const BaselineFit b = fit_baseline(d, Method::logistic, cfg.hp, kind, cfg.seed);
    CHECK(a.model == std::get<LinearModel>(b.model));
    CHECK(a.convergence == *b.convergence);
    CHECK(a.skipped_count == 0);
    CHECK(a.noise.mean() == 0.0);
  }
}

TEST_CASE("separable blobs are fit perfectly") {
  const Dataset d = blobs(5, 100, 3.0);
  TrainConfig cfg;
  cfg.hp.eta = 0.05;
  const TrainedModel t = adaptive_fit(d, cfg);
  CHECK(accuracy(t.model, d) == 1.0);
  CHECK_FALSE(t.convergence.diverged);
}

TEST_CASE("30% flipped blobs: skip catches the flips and beats ignoring noise (10-seed mean)") {
  double caught = 0.0;
  double gain = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset clean = blobs(100 + seed, 100, 3.0);
    const Dataset test = blobs(200 + seed, 500, 3.0);
    const auto [noisy, flipped] = flip_some(clean, 0.3, 300 + seed);
    TrainConfig cfg;
    cfg.policy = NoisePolicy::skip;
    cfg.hp.nu = 0.3;
    cfg.hp.tau = 0.9;
    const TrainedModel skip = adaptive_fit(noisy, cfg);
    std::size_t zeroed = 0;
    for (auto i : flipped) zeroed += skip.weights[i] == 0.0;
    caught += static_cast<double>(zeroed) / static_cast<double>(flipped.size());

    cfg.policy = NoisePolicy::off;
    const TrainedModel off = adaptive_fit(noisy, cfg);
    gain += accuracy(skip.model, test) - accuracy(off.model, test);
  }
  CHECK(caught / 10.0 >= 0.9);
  CHECK(gain / 10.0 > 0.0);
}

TEST_CASE("skipped_count counts the zero weights") {
  const auto [noisy, flipped] = flip_some(blobs(11, 60, 1.5), 0.3, 12);
  TrainConfig cfg;
  cfg.policy = NoisePolicy::skip;
  cfg.hp.nu = 0.3;
  cfg.hp.tau = 0.5;
  const TrainedModel skip = adaptive_fit(noisy, cfg);
  std::size_t count = 0;
  for (double w : skip.weights) count += w == 0.0;
  CHECK(count > 0);
  CHECK(skip.skipped_count == count);
  cfg.policy = NoisePolicy::downweight;
  CHECK(adaptive_fit(noisy, cfg).skipped_count == 0);
}

TEST_CASE("property: skipped examples have no influence") {
  const Dataset d = blobs(17, 40, 1.0);
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector rates(d.size());
  for (auto& r : rates) r = unit(rng) < 0.2 ? 0.95 : 0.1 * unit(rng);
  TrainConfig cfg;
  cfg.policy = NoisePolicy::skip;
  cfg.fixed_profile = NoiseProfile(rates);
  cfg.hp.max_iterations = 200;
  const TrainedModel base = adaptive_fit(d, cfg);

  std::normal_distribution<double> normal(0.0, 50.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<LabeledExample> ex = d.examples();
    for (std::size_t i = 0; i < ex.size(); ++i)
      if (rates[i] > cfg.hp.tau) ex[i] = LabeledExample(Vector{normal(rng), normal(rng)}, flip(ex[i].y()));
    const TrainedModel moved = adaptive_fit(Dataset(std::move(ex)), cfg);
    CHECK(moved.model == base.model);
  }
}

TEST_CASE("property: downweighting shrinks an example's pull") {
  // A single mislabeled point far on the wrong side; its rate grows, its
  // effect on the learned boundary shrinks.
  std::vector<LabeledExample> ex = blobs(23, 30, 2.0).examples();
  ex.emplace_back(Vector{4.0, 4.0}, Label::negative);
  const Dataset d(std::move(ex));
  double last_bias = -1e9;
  for (double r : {0.0, 0.3, 0.6, 0.9}) {
    Vector rates(d.size(), 0.0);
    rates.back() = r;
    TrainConfig cfg;
    cfg.fixed_profile = NoiseProfile(rates);
    cfg.hp.max_iterations = 400;
    cfg.hp.tol = 0.0;
    const TrainedModel t = adaptive_fit(d, cfg);
    CHECK(t.weights.back() == doctest::Approx(1.0 - r));
    CHECK(t.model.margin(d.examples().back().x()) > last_bias);
    last_bias = t.model.margin(d.examples().back().x());
  }
}

TEST_CASE("refitting the detector every iteration is deterministic on fixed data") {
  const Dataset d = blobs(29, 30, 1.0);
  TrainConfig cfg;
  cfg.hp.max_iterations = 20;
  const TrainedModel once = adaptive_fit(d, cfg);
  cfg.refit_each_iteration = true;
  const TrainedModel every = adaptive_fit(d, cfg);
  CHECK(once.model == every.model);
  CHECK(once.noise.rates() == every.noise.rates());
}

TEST_CASE("all examples skipped is unlearnable") {
  const Dataset d = blobs(31, 10, 1.0);
  TrainConfig cfg;
  cfg.policy = NoisePolicy::skip;
  cfg.fixed_profile = NoiseProfile(Vector(d.size(), 1.0));
  CHECK_THROWS_AS(adaptive_fit(d, cfg), ValidationError);
}

TEST_CASE("mini-batch training is seeded") {
  const Dataset d = blobs(37, 50, 2.0);
  TrainConfig cfg;
  cfg.batch_size = 16;
  cfg.seed = 99;
  cfg.hp.max_iterations = 50;
  const TrainedModel a = adaptive_fit(d, cfg);
  const TrainedModel b = adaptive_fit(d, cfg);
  CHECK(a.model == b.model);
  CHECK(a.convergence == b.convergence);
  CHECK(accuracy(a.model, d) > 0.95);
}
