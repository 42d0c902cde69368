#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "halfspace/core.hpp"
#include "halfspace/optim.hpp"

namespace halfspace {

// ---------------------------------------------------------------------------
// Synthetic data

struct HalfspaceSample {
  Dataset data;
  LinearModel truth;
};

/// n i.i.d. standard Gaussian points in d dimensions labelled by a halfspace.
/// Without `truth` the normal is a random unit vector and the bias is uniform
/// in [-0.1, 0.1]. Points with |w.x + b| < margin are redrawn; throws
/// ValidationError when that keeps failing.
HalfspaceSample gen_halfspace(std::size_t n, std::size_t d, double margin, std::uint64_t seed,
                              std::optional<LinearModel> truth = std::nullopt);

enum class NoiseMode { random_flip, boundary_flip, feature_corrupt };

std::string to_string(NoiseMode mode);
NoiseMode parse_noise_mode(const std::string& name);

struct NoiseSpec {
  double rate = 0.0;
  NoiseMode mode = NoiseMode::boundary_flip;
  std::uint64_t seed = 0;

  void validate() const;
};

/// floor(rate * n), robust to the representation error of decimal rates.
std::size_t corruption_count(double rate, std::size_t n);

struct CorruptedData {
  Dataset data;
  std::vector<std::size_t> corrupted;  // sorted, distinct
};

/// random_flip: uniformly chosen labels negated.
/// boundary_flip: the labels closest to the true boundary negated.
/// feature_corrupt: features redrawn from N(0, (3 s)^2), s the feature std,
///   labelled opposite to what the true halfspace says.
CorruptedData inject_noise(const Dataset& data, const NoiseSpec& spec, const LinearModel& truth);

// ---------------------------------------------------------------------------
// Baselines

/// Depth-limited axis-aligned CART with Gini impurity.
class TreeModel {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;     // x[feature] <= threshold
    int right = -1;
    Label label = Label::positive;
  };

  explicit TreeModel(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

  Label predict(std::span<const double> x) const;
  const std::vector<Node>& nodes() const { return nodes_; }
  int depth() const;

 private:
  std::vector<Node> nodes_;
};

TreeModel fit_tree(const Dataset& data, int max_depth = 5);

enum class Method { proposed, linear_svm, logistic, decision_tree };

std::string to_string(Method method);
Method parse_method(const std::string& name);
const std::vector<Method>& all_methods();

using BaselineModel = std::variant<LinearModel, TreeModel>;

struct BaselineFit {
  BaselineModel model;
  std::optional<ConvergenceRecord> convergence;  // absent for the tree
};

/// logistic: unweighted logistic loss + alpha/2 ||w||^2 (rho forced to 0),
///   fitted exactly like adaptive_fit with policy off.
/// linear_svm: mean hinge loss + alpha/2 ||w||^2 by subgradient descent.
/// decision_tree: fit_tree with depth 5.
/// Throws ValidationError on single-class data.
BaselineFit fit_baseline(const Dataset& data, Method method, const HyperParams& hp,
                         OptimizerKind optimizer = OptimizerKind::sgd, std::uint64_t seed = 0);

Label predict(const TreeModel& model, std::span<const double> x);
Label predict(const BaselineModel& model, std::span<const double> x);

// ---------------------------------------------------------------------------
// Metrics

/// (TP + TN) / total.
double accuracy_from_counts(std::size_t true_positives, std::size_t true_negatives, std::size_t total);

double accuracy(const LinearModel& model, const Dataset& data);
double accuracy(const BaselineModel& model, const Dataset& data);

struct RateValue {
  double rate = 0.0;
  double value = 0.0;

  bool operator==(const RateValue&) const = default;
};

/// |acc_i - acc_{i-1}| / (rate_i - rate_{i-1}) for i >= 1; row 0 is the
/// anchor (normally the clean, rate 0 run) and gets no output row.
/// Requires >= 2 rows with strictly increasing rates.
std::vector<RateValue> noise_sensitivity(std::span<const RateValue> accuracies);

struct MetricsRow {
  double noise_rate = 0.0;
  std::map<Method, double> accuracy_by_method;     // mean over seeds
  std::map<Method, double> accuracy_std_by_method; // sample std over seeds
  std::map<Method, double> sensitivity_by_method;
  std::map<Method, std::optional<double>> iterations_by_method;  // median over seeds
};

/// Deterministic 64-bit mix (splitmix64) used to derive per-cell seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace halfspace
