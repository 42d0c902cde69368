#pragma once

// Reference computations used only by tests. Nothing here calls into the
// solver or gradient code it is used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

/// Central difference of f at x along every coordinate.
inline Vec central_difference(const std::function<double(const Vec&)>& f, Vec x, double h) {
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + h;
    const double up = f(x);
    x[i] = orig - h;
    const double down = f(x);
    x[i] = orig;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

/// Logistic loss written directly from its definition, in long double.
inline double naive_logistic(double margin) {
  return static_cast<double>(std::log1p(std::exp(-static_cast<long double>(margin))));
}

inline double gaussian_kernel(const Vec& a, const Vec& b, double gamma) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::exp(-gamma * s);
}

/// Euclidean projection onto {a : 0 <= a_i <= c, sum a_i = 1} by bisection on the shift.
inline Vec project_capped_simplex(const Vec& v, double c) {
  double lo = *std::min_element(v.begin(), v.end()) - c - 1.0;
  double hi = *std::max_element(v.begin(), v.end()) + 1.0;
  auto mass = [&](double t) {
    double s = 0.0;
    for (double e : v) s += std::clamp(e - t, 0.0, c);
    return s;
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) > 1.0 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::clamp(v[i] - t, 0.0, c);
  return out;
}

struct QpSolution {
  Vec alpha;
  double objective;
};

/// Dense accelerated projected gradient for min 1/2 a'Ka over the capped simplex.
inline QpSolution one_class_qp(const std::vector<Vec>& points, double nu, double gamma, int iterations = 20000) {
  const std::size_t n = points.size();
  const double c = 1.0 / (nu * static_cast<double>(n));
  std::vector<Vec> k(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k[i][j] = gaussian_kernel(points[i], points[j], gamma);
  auto objective = [&](const Vec& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += a[i] * a[j] * k[i][j];
    return 0.5 * s;
  };
  const double step = 1.0 / static_cast<double>(n);  // K has entries <= 1, so lambda_max <= n
  Vec x = project_capped_simplex(Vec(n, 1.0 / static_cast<double>(n)), c);
  Vec y = x;
  double t = 1.0;
  for (int it = 0; it < iterations; ++it) {
    Vec g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i] += k[i][j] * y[j];
    Vec z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = y[i] - step * g[i];
    Vec next = project_capped_simplex(z, c);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    for (std::size_t i = 0; i < n; ++i) y[i] = next[i] + (t - 1.0) / t_next * (next[i] - x[i]);
    x = std::move(next);
    t = t_next;
  }
  return {x, objective(x)};
}

inline std::vector<Vec> gaussian_points(std::size_t n, std::size_t d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<Vec> pts(n, Vec(d));
  for (auto& p : pts)
    for (auto& v : p) v = normal(rng);
  return pts;
}

}  // namespace oracle
