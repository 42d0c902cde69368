#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "halfspace/noise.hpp"
#include "halfspace/serialize.hpp"
#include "oracles.hpp"

using namespace halfspace;

namespace {

std::vector<Vector> blob(std::mt19937_64& rng, std::size_t n, Vector center, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<Vector> pts(n, center);
  for (auto& p : pts)
    for (auto& v : p) v += normal(rng);
  return pts;
}

Dataset two_blobs(std::mt19937_64& rng, std::size_t per_class, double sep) {
  std::vector<LabeledExample> ex;
  for (auto& p : blob(rng, per_class, {sep, sep}, 1.0)) ex.emplace_back(p, Label::positive);
  for (auto& p : blob(rng, per_class, {-sep, -sep}, 1.0)) ex.emplace_back(p, Label::negative);
  return Dataset(std::move(ex));
}

}  // namespace

TEST_CASE("rbf_kernel") {
  CHECK(rbf_kernel(Vector{1.0, 2.0}, Vector{1.0, 2.0}, 0.5) == 1.0);
  CHECK(rbf_kernel(Vector{0.0, 0.0}, Vector{3.0, 4.0}, 0.1) == doctest::Approx(std::exp(-2.5)).epsilon(1e-15));
  CHECK_THROWS_AS(rbf_kernel(Vector{0.0}, Vector{0.0, 1.0}, 1.0), ValidationError);
  CHECK_THROWS_AS(rbf_kernel(Vector{0.0}, Vector{1.0}, 0.0), ValidationError);

  std::mt19937_64 rng(1);
  const auto pts = oracle::gaussian_points(20, 3, rng);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double k = rbf_kernel(pts[i], pts[j], 0.7);
      CHECK(k == rbf_kernel(pts[j], pts[i], 0.7));
      CHECK(k > 0.0);
      CHECK(k <= 1.0);
    }
}

TEST_CASE("default_gamma is 1 / (d var)") {
  const std::vector<Vector> pts{{0.0, 2.0}, {2.0, 0.0}};
  // entries {0, 2, 2, 0}: mean 1, population variance 1
  CHECK(default_gamma(pts) == doctest::Approx(0.5));
}

TEST_CASE("two identical points with nu = 1 share the mass") {
  const std::vector<Vector> pts{{1.0, 1.0}, {1.0, 1.0}};
  const auto fit = fit_ocsvm(pts, 1.0, 1.0);
  CHECK(fit.dual[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.dual[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("infeasible problems are rejected") {
  const std::vector<Vector> pts{{0.0}, {1.0}, {2.0}, {3.0}};
  CHECK_THROWS_AS(fit_ocsvm(pts, 0.2, 1.0), InfeasibleError);  // nu N = 0.8
  CHECK_THROWS_AS(fit_ocsvm(std::vector<Vector>{{0.0}}, 1.0, 1.0), InfeasibleError);
  CHECK_NOTHROW(fit_ocsvm(pts, 0.25, 1.0));
}

TEST_CASE("SMO matches an independent projected-gradient solve") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 4; ++trial) {
    const auto pts = oracle::gaussian_points(40, 2, rng);
    const double nu = 0.1 + 0.2 * trial;
    const double gamma = 0.5;
    const auto ref = oracle::one_class_qp(pts, nu, gamma);
    const auto fit = fit_ocsvm(std::vector<Vector>(pts.begin(), pts.end()), nu, gamma, {.tolerance = 1e-8});
    CHECK(fit.converged);
    CHECK(fit.dual_objective == doctest::Approx(ref.objective).epsilon(1e-6));
    CHECK(ocsvm_dual_objective(std::vector<Vector>(pts.begin(), pts.end()), ref.alpha, gamma) ==
          doctest::Approx(ref.objective).epsilon(1e-12));
  }
}

TEST_CASE("property: dual feasibility") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 10 + rng() % 60;
    const auto raw = oracle::gaussian_points(n, 3, rng);
    const std::vector<Vector> pts(raw.begin(), raw.end());
    const double nu = std::uniform_real_distribution<double>(1.0 / n + 0.01, 1.0)(rng);
    const auto fit = fit_ocsvm(pts, nu, default_gamma(pts));
    const double cap = 1.0 / (nu * static_cast<double>(n));
    double sum = 0.0;
    for (double a : fit.dual) {
      CHECK(a >= 0.0);
      CHECK(a <= cap * (1.0 + 1e-12));
      sum += a;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.max_violation < 1e-4);
  }
}

TEST_CASE("property: nu bounds the outlier fraction and the support fraction") {
  std::mt19937_64 rng(77);
  for (int seed = 0; seed < 10; ++seed) {
    const auto raw = oracle::gaussian_points(200, 2, rng);
    const std::vector<Vector> pts(raw.begin(), raw.end());
    const double nu = 0.2;
    const auto fit = fit_ocsvm(pts, nu, default_gamma(pts), {.tolerance = 1e-6});
    std::size_t outside = 0;
    std::size_t support = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (decision_value(fit.model, pts[i]) < -1e-6) ++outside;
      if (fit.dual[i] > 0.0) ++support;
    }
    const double n = static_cast<double>(pts.size());
    CHECK(outside / n <= nu + 2.0 / n);
    CHECK(support / n >= nu - 2.0 / n);
  }
}

TEST_CASE("decision is about zero on free support vectors and -offset far away") {
  std::mt19937_64 rng(9);
  const auto raw = oracle::gaussian_points(80, 2, rng);
  const std::vector<Vector> pts(raw.begin(), raw.end());
  const auto fit = fit_ocsvm(pts, 0.3, 0.5, {.tolerance = 1e-9});
  const double cap = 1.0 / (0.3 * 80.0);
  int free = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (fit.dual[i] > 1e-9 && fit.dual[i] < cap - 1e-9) {
      CHECK(std::abs(decision_value(fit.model, pts[i])) < 1e-6);
      ++free;
    }
  }
  CHECK(free > 0);
  CHECK(decision_value(fit.model, Vector{1e3, 1e3}) == doctest::Approx(-fit.model.offset));
}

TEST_CASE("a planted outlier gets the lowest score") {
  std::mt19937_64 rng(12);
  auto pts = blob(rng, 60, {0.0, 0.0}, 0.5);
  pts.push_back({6.0, 6.0});
  const auto fit = fit_ocsvm(pts, 0.1, default_gamma(pts));
  const double outlier = decision_value(fit.model, pts.back());
  CHECK(outlier < 0.0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) CHECK(decision_value(fit.model, pts[i]) > outlier);
}

TEST_CASE("property: permuting the training points leaves decisions unchanged") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto raw = oracle::gaussian_points(50, 2, rng);
    std::vector<Vector> pts(raw.begin(), raw.end());
    const auto a = fit_ocsvm(pts, 0.25, 0.5, {.tolerance = 1e-10});
    std::shuffle(pts.begin(), pts.end(), rng);
    const auto b = fit_ocsvm(pts, 0.25, 0.5, {.tolerance = 1e-10});
    for (const auto& p : pts) CHECK(decision_value(a.model, p) == doctest::Approx(decision_value(b.model, p)).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("noise rate mapping") {
  CHECK(noise_rate_from_decision(0.0, 3.0) == 0.5);
  CHECK(noise_rate_from_decision(1.0, 2.0) == doctest::Approx(1.0 / (1.0 + std::exp(2.0))));
  for (double f = -5.0; f < 5.0; f += 0.25)
    CHECK(noise_rate_from_decision(f, 1.5) > noise_rate_from_decision(f + 0.25, 1.5));

  const Vector decisions{-1.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  const double k = calibrate_slope(decisions);
  CHECK(noise_rate_from_decision(0.9, k) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(std::isfinite(calibrate_slope(Vector{-1.0, -2.0})));
  CHECK(calibrate_slope(Vector{-1.0, -2.0}) > 0.0);
  CHECK(calibrate_slope(Vector{0.0, 0.0}) == 1.0);
}

TEST_CASE("flipped points in their wrong class look noisy") {
  std::mt19937_64 rng(21);
  const Dataset clean = two_blobs(rng, 100, 2.0);
  std::vector<LabeledExample> ex = clean.examples();
  std::vector<std::size_t> flipped;
  for (std::size_t i = 0; i < ex.size(); i += 10) {
    ex[i] = LabeledExample(ex[i].x(), flip(ex[i].y()));
    flipped.push_back(i);
  }
  const Dataset noisy(std::move(ex));
  HyperParams hp;
  hp.nu = 0.15;
  const auto det = fit_detector(noisy, hp);
  const NoiseProfile prof = noise_profile(det, noisy);
  double flipped_mean = 0.0;
  for (auto i : flipped) flipped_mean += prof.rates()[i];
  flipped_mean /= static_cast<double>(flipped.size());
  CHECK(flipped_mean > 0.5);
  CHECK(prof.mean() < flipped_mean);
}

TEST_CASE("detector needs two examples per class") {
  const Dataset d = parse_dataset("0,0,1\n1,1,1\n2,2,1\n3,3,-1\n");
  HyperParams hp;
  hp.nu = 1.0;
  CHECK_THROWS_AS(fit_detector(d, hp), InfeasibleError);
}

TEST_CASE("detector JSON round trip") {
  std::mt19937_64 rng(4);
  const Dataset d = two_blobs(rng, 20, 2.0);
  HyperParams hp;
  hp.nu = 0.3;
  const auto det = fit_detector(d, hp);
  const auto back = detector_from_json(to_json(det));
  CHECK(back.slope == det.slope);
  for (const auto& e : d.examples())
    CHECK(decision_value(back.model_for(e.y()), e.x()) == decision_value(det.model_for(e.y()), e.x()));
  CHECK_THROWS_AS(detector_from_json(nlohmann::json::object()), ValidationError);
}
