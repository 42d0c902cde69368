#include "halfspace/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace halfspace {

double rbf_kernel(std::span<const double> x1, std::span<const double> x2, double gamma) {
  if (x1.size() != x2.size()) throw ValidationError("rbf_kernel: dimension mismatch");
  if (!(gamma > 0.0)) throw ValidationError("rbf_kernel: gamma must be > 0");
  return std::exp(-gamma * squared_distance(x1, x2));
}

double default_gamma(std::span<const Vector> points) {
  if (points.empty()) throw ValidationError("default_gamma: no points");
  const std::size_t d = points.front().size();
  double sum = 0.0;
  double count = 0.0;
  for (const auto& p : points)
    for (double v : p) {
      sum += v;
      count += 1.0;
    }
  const double mean = sum / count;
  double ss = 0.0;
  for (const auto& p : points)
    for (double v : p) ss += (v - mean) * (v - mean);
  const double var = ss / count;
  if (!(var > 0.0)) return 1.0 / static_cast<double>(d);
  return 1.0 / (static_cast<double>(d) * var);
}

namespace {

class GramMatrix {
 public:
  GramMatrix(std::span<const Vector> points, double gamma) : n_(points.size()), k_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      k_[i * n_ + i] = 1.0;
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double v = std::exp(-gamma * squared_distance(points[i], points[j]));
        k_[i * n_ + j] = v;
        k_[j * n_ + i] = v;
      }
    }
  }
  double operator()(std::size_t i, std::size_t j) const { return k_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {k_.data() + i * n_, n_}; }

 private:
  std::size_t n_;
  std::vector<double> k_;
};

}  // namespace

OcSvmFit fit_ocsvm(std::span<const Vector> points, double nu, double gamma, OcSvmOptions opts) {
  const std::size_t n = points.size();
  if (n < 2) throw InfeasibleError("one-class SVM needs at least 2 points, got " + std::to_string(n));
  if (!(nu > 0.0 && nu <= 1.0)) throw ValidationError("nu must be in (0, 1]");
  if (!(gamma > 0.0)) throw ValidationError("gamma must be > 0");
  const double nu_n = nu * static_cast<double>(n);
  if (nu_n < 1.0) {
    throw InfeasibleError("one-class SVM infeasible: nu * N = " + format_double(nu_n) + " < 1 (nu = " +
                          format_double(nu) + ", N = " + std::to_string(n) + ")");
  }
  const std::size_t d = points.front().size();
  for (const auto& p : points)
    if (p.size() != d) throw ValidationError("one-class SVM: points have inconsistent dimensions");

  const double upper = 1.0 / nu_n;
  const GramMatrix gram(points, gamma);

  // Feasible start: fill the first floor(nu N) coordinates to the box bound.
  Vector alpha(n, 0.0);
  const auto full = static_cast<std::size_t>(std::floor(nu_n));
  for (std::size_t i = 0; i < std::min(full, n); ++i) alpha[i] = upper;
  if (full < n) alpha[full] = std::max(0.0, 1.0 - static_cast<double>(full) * upper);

  Vector grad(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] == 0.0) continue;
    const auto row = gram.row(i);
    for (std::size_t t = 0; t < n; ++t) grad[t] += alpha[i] * row[t];
  }

  OcSvmFit fit;
  for (;;) {
    // Maximal violating pair: i can grow, j can shrink.
    std::size_t i = n;
    std::size_t j = n;
    double g_min = std::numeric_limits<double>::infinity();
    double g_max = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      if (alpha[t] < upper && grad[t] < g_min) {
        g_min = grad[t];
        i = t;
      }
      if (alpha[t] > 0.0 && grad[t] > g_max) {
        g_max = grad[t];
        j = t;
      }
    }
    fit.max_violation = (i == n || j == n) ? 0.0 : g_max - g_min;
    if (fit.max_violation < opts.tolerance) {
      fit.converged = true;
      break;
    }
    if (fit.iterations >= opts.max_iterations) break;
    ++fit.iterations;

    double curvature = gram(i, i) + gram(j, j) - 2.0 * gram(i, j);
    if (curvature <= 0.0) curvature = 1e-12;
    double delta = fit.max_violation / curvature;
    const double room_i = upper - alpha[i];
    const double room_j = alpha[j];
    if (delta >= room_i && room_i <= room_j) {
      delta = room_i;
      alpha[i] = upper;
      alpha[j] = room_i == room_j ? 0.0 : alpha[j] - delta;
    } else if (delta >= room_j) {
      delta = room_j;
      alpha[j] = 0.0;
      alpha[i] += delta;
    } else {
      alpha[i] += delta;
      alpha[j] -= delta;
    }

    const auto row_i = gram.row(i);
    const auto row_j = gram.row(j);
    for (std::size_t t = 0; t < n; ++t) grad[t] += delta * (row_i[t] - row_j[t]);
  }

  // Offset: mean gradient over free coordinates, else the middle of the
  // feasible interval [max over at-bound, min over at-zero].
  double free_sum = 0.0;
  std::size_t free_count = 0;
  double lower_bound = -std::numeric_limits<double>::infinity();
  double upper_bound = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0 && alpha[t] < upper) {
      free_sum += grad[t];
      ++free_count;
    } else if (alpha[t] >= upper) {
      lower_bound = std::max(lower_bound, grad[t]);
    } else {
      upper_bound = std::min(upper_bound, grad[t]);
    }
  }
  double offset = 0.0;
  if (free_count > 0) {
    offset = free_sum / static_cast<double>(free_count);
  } else if (std::isfinite(lower_bound) && std::isfinite(upper_bound)) {
    offset = 0.5 * (lower_bound + upper_bound);
  } else {
    offset = std::isfinite(lower_bound) ? lower_bound : upper_bound;
  }

  double objective = 0.0;
  for (std::size_t t = 0; t < n; ++t) objective += alpha[t] * grad[t];
  fit.dual_objective = 0.5 * objective;

  fit.model.offset = offset;
  fit.model.gamma = gamma;
  fit.model.nu = nu;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      fit.model.alphas.push_back(alpha[t]);
      fit.model.support_points.push_back(points[t]);
    }
  }
  fit.dual = std::move(alpha);
  return fit;
}

double decision_value(const OcSvmModel& model, std::span<const double> x) {
  if (x.size() != model.dim()) {
    throw ValidationError("decision_value: dimension mismatch (model " + std::to_string(model.dim()) +
                          ", input " + std::to_string(x.size()) + ")");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < model.alphas.size(); ++i)
    s += model.alphas[i] * std::exp(-model.gamma * squared_distance(model.support_points[i], x));
  return s - model.offset;
}

double ocsvm_dual_objective(std::span<const Vector> points, std::span<const double> alphas, double gamma) {
  if (points.size() != alphas.size()) throw ValidationError("dual objective: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j)
      s += alphas[i] * alphas[j] * rbf_kernel(points[i], points[j], gamma);
  return 0.5 * s;
}

double noise_rate_from_decision(double decision, double slope) {
  const double z = slope * decision;
  // 1 / (1 + e^z), written to avoid overflow for large |z|.
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

double calibrate_slope(std::span<const double> decisions) {
  if (decisions.empty()) throw ValidationError("calibrate_slope: no decision values");
  Vector sorted(decisions.begin(), decisions.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = 0.9 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double q90 = sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  const double ln9 = std::log(9.0);
  if (q90 > 0.0) return ln9 / q90;
  double scale = 0.0;
  for (double v : sorted) scale = std::max(scale, std::abs(v));
  return scale > 0.0 ? ln9 / scale : 1.0;
}

PerClassDetector fit_detector(const Dataset& data, const HyperParams& hp, const DetectorOptions& opts) {
  hp.validate();
  std::vector<std::size_t> all;
  if (opts.fit_indices) {
    all = *opts.fit_indices;
  } else {
    all.resize(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) all[i] = i;
  }

  std::vector<Vector> pos;
  std::vector<Vector> neg;
  std::vector<Vector> every;
  for (auto i : all) {
    if (i >= data.size()) throw ValidationError("detector fit index out of range");
    const auto& e = data[i];
    (e.y() == Label::positive ? pos : neg).push_back(e.x());
    every.push_back(e.x());
  }
  for (const auto& [points, name] : {std::pair{&pos, "+1"}, std::pair{&neg, "-1"}}) {
    if (points->size() < 2) {
      throw InfeasibleError(std::string("noise detector needs at least 2 examples of class ") + name + ", got " +
                            std::to_string(points->size()));
    }
  }
  const double gamma = hp.gamma ? *hp.gamma : default_gamma(every);

  PerClassDetector detector;
  detector.model_pos = fit_ocsvm(pos, hp.nu, gamma, opts.solver).model;
  detector.model_neg = fit_ocsvm(neg, hp.nu, gamma, opts.solver).model;

  Vector decisions;
  decisions.reserve(all.size());
  for (auto i : all) decisions.push_back(decision_value(detector.model_for(data[i].y()), data[i].x()));
  detector.slope = calibrate_slope(decisions);
  return detector;
}

Vector own_class_decisions(const PerClassDetector& detector, const Dataset& data) {
  Vector out;
  out.reserve(data.size());
  for (const auto& e : data.examples()) out.push_back(decision_value(detector.model_for(e.y()), e.x()));
  return out;
}

NoiseProfile noise_profile(const PerClassDetector& detector, const Dataset& data) {
  const Vector decisions = own_class_decisions(detector, data);
  Vector rates(decisions.size());
  for (std::size_t i = 0; i < decisions.size(); ++i) rates[i] = noise_rate_from_decision(decisions[i], detector.slope);
  return NoiseProfile(std::move(rates));
}

}  // namespace halfspace
