#include "halfspace/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "halfspace/loss.hpp"
#include "halfspace/train.hpp"

namespace halfspace {

namespace {

constexpr int kRedrawCap = 10000;

Vector draw_gaussian(std::mt19937_64& rng, std::size_t d, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector x(d);
  for (auto& v : x) v = normal(rng);
  return x;
}

}  // namespace

HalfspaceSample gen_halfspace(std::size_t n, std::size_t d, double margin, std::uint64_t seed,
                              std::optional<LinearModel> truth) {
  if (n < 2) throw ValidationError("gen_halfspace: n must be >= 2");
  if (d < 1) throw ValidationError("gen_halfspace: d must be >= 1");
  if (!(margin >= 0.0) || !std::isfinite(margin)) throw ValidationError("gen_halfspace: margin must be >= 0");
  std::mt19937_64 rng(seed);

  if (!truth) {
    Vector w = draw_gaussian(rng, d);
    const double norm = std::sqrt(dot(w, w));
    for (auto& v : w) v /= norm;
    std::uniform_real_distribution<double> bias(-0.1, 0.1);
    truth = LinearModel(std::move(w), bias(rng));
  } else if (truth->dim() != d) {
    throw ValidationError("gen_halfspace: true model dimension does not match d");
  }

  auto draw_point = [&](std::optional<Label> wanted) {
    for (int attempt = 0; attempt < kRedrawCap; ++attempt) {
      Vector x = draw_gaussian(rng, d);
      const double m = truth->margin(x);
      if (std::abs(m) < margin) continue;
      const Label y = m >= 0.0 ? Label::positive : Label::negative;
      if (wanted && y != *wanted) continue;
      return LabeledExample(std::move(x), y);
    }
    throw ValidationError("gen_halfspace: margin " + format_double(margin) + " cannot be met within " +
                          std::to_string(kRedrawCap) + " draws");
  };

  std::vector<LabeledExample> examples;
  examples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) examples.push_back(draw_point(std::nullopt));

  // Guarantee both classes by redrawing the last point from the missing side.
  const auto positives = std::count_if(examples.begin(), examples.end(),
                                       [](const auto& e) { return e.y() == Label::positive; });
  if (positives == 0) examples.back() = draw_point(Label::positive);
  if (positives == static_cast<long>(n)) examples.back() = draw_point(Label::negative);

  return {Dataset(std::move(examples)), std::move(*truth)};
}

std::string to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::random_flip:
      return "random_flip";
    case NoiseMode::boundary_flip:
      return "boundary_flip";
    case NoiseMode::feature_corrupt:
      return "feature_corrupt";
  }
  return "random_flip";
}

NoiseMode parse_noise_mode(const std::string& name) {
  if (name == "random_flip") return NoiseMode::random_flip;
  if (name == "boundary_flip") return NoiseMode::boundary_flip;
  if (name == "feature_corrupt") return NoiseMode::feature_corrupt;
  throw ValidationError("unknown noise mode '" + name + "' (expected random_flip, boundary_flip or feature_corrupt)");
}

void NoiseSpec::validate() const {
  if (!(rate >= 0.0 && rate < 1.0)) throw ValidationError("noise rate must be in [0, 1)");
}

std::size_t corruption_count(double rate, std::size_t n) {
  return static_cast<std::size_t>(std::floor(rate * static_cast<double>(n) + 1e-9));
}

CorruptedData inject_noise(const Dataset& data, const NoiseSpec& spec, const LinearModel& truth) {
  spec.validate();
  if (truth.dim() != data.dim()) throw ValidationError("inject_noise: true model dimension mismatch");
  const std::size_t n = data.size();
  const std::size_t k = corruption_count(spec.rate, n);
  std::mt19937_64 rng(spec.seed);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (spec.mode == NoiseMode::boundary_flip) {
    Vector distance(n);
    for (std::size_t i = 0; i < n; ++i) distance[i] = std::abs(truth.margin(data[i].x()));
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return distance[a] < distance[b]; });
  } else {
    // Partial Fisher-Yates: the first k slots become a uniform sample.
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(order[i], order[pick(rng)]);
    }
  }
  std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(chosen.begin(), chosen.end());

  double scale = 1.0;
  if (spec.mode == NoiseMode::feature_corrupt) {
    double sum = 0.0;
    double sq = 0.0;
    double count = 0.0;
    for (const auto& e : data.examples())
      for (double v : e.x()) {
        sum += v;
        sq += v * v;
        count += 1.0;
      }
    const double mean = sum / count;
    scale = std::sqrt(std::max(0.0, sq / count - mean * mean));
    if (!(scale > 0.0)) scale = 1.0;
  }

  std::vector<LabeledExample> out = data.examples();
  for (auto i : chosen) {
    if (spec.mode == NoiseMode::feature_corrupt) {
      Vector x = draw_gaussian(rng, data.dim(), 3.0 * scale);
      const Label y = flip(predict(truth, x));
      out[i] = LabeledExample(std::move(x), y);
    } else {
      out[i] = LabeledExample(out[i].x(), flip(out[i].y()));
    }
  }
  return {Dataset(std::move(out)), std::move(chosen)};
}

// ---------------------------------------------------------------------------
// Decision tree

Label TreeModel::predict(std::span<const double> x) const {
  int node = 0;
  while (nodes_[node].feature >= 0) {
    const auto& nd = nodes_[node];
    if (static_cast<std::size_t>(nd.feature) >= x.size()) throw ValidationError("tree predict: dimension mismatch");
    node = x[nd.feature] <= nd.threshold ? nd.left : nd.right;
  }
  return nodes_[node].label;
}

int TreeModel::depth() const {
  std::vector<int> depth(nodes_.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    best = std::max(best, depth[i]);
    if (nodes_[i].feature >= 0) {
      depth[nodes_[i].left] = depth[i] + 1;
      depth[nodes_[i].right] = depth[i] + 1;
    }
  }
  return best;
}

namespace {

double gini(double pos, double total) {
  if (total <= 0.0) return 0.0;
  const double p = pos / total;
  return 2.0 * p * (1.0 - p);
}

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, int max_depth) : data_(data), max_depth_(max_depth) {}

  std::vector<TreeModel::Node> build() {
    std::vector<std::size_t> all(data_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    grow(all, 0);
    return std::move(nodes_);
  }

 private:
  int grow(const std::vector<std::size_t>& idx, int depth) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    std::size_t pos = 0;
    for (auto i : idx)
      if (data_[i].y() == Label::positive) ++pos;
    nodes_[id].label = 2 * pos >= idx.size() ? Label::positive : Label::negative;
    if (depth >= max_depth_ || pos == 0 || pos == idx.size() || idx.size() < 2) return id;

    const double total = static_cast<double>(idx.size());
    const double parent = gini(static_cast<double>(pos), total);
    double best_score = parent;
    int best_feature = -1;
    double best_threshold = 0.0;

    std::vector<std::size_t> sorted = idx;
    for (std::size_t f = 0; f < data_.dim(); ++f) {
      std::stable_sort(sorted.begin(), sorted.end(),
                       [&](auto a, auto b) { return data_[a].x()[f] < data_[b].x()[f]; });
      double left_pos = 0.0;
      for (std::size_t s = 0; s + 1 < sorted.size(); ++s) {
        if (data_[sorted[s]].y() == Label::positive) left_pos += 1.0;
        const double a = data_[sorted[s]].x()[f];
        const double b = data_[sorted[s + 1]].x()[f];
        if (a == b) continue;
        const double left_n = static_cast<double>(s + 1);
        const double right_n = total - left_n;
        const double score = (left_n * gini(left_pos, left_n) +
                              right_n * gini(static_cast<double>(pos) - left_pos, right_n)) /
                             total;
        if (score < best_score) {
          best_score = score;
          best_feature = static_cast<int>(f);
          best_threshold = a + 0.5 * (b - a);
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (auto i : idx) (data_[i].x()[best_feature] <= best_threshold ? left : right).push_back(i);
    nodes_[id].feature = best_feature;
    nodes_[id].threshold = best_threshold;
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  const Dataset& data_;
  int max_depth_;
  std::vector<TreeModel::Node> nodes_;
};

}  // namespace

TreeModel fit_tree(const Dataset& data, int max_depth) {
  if (max_depth < 0) throw ValidationError("tree depth must be >= 0");
  return TreeModel(TreeBuilder(data, max_depth).build());
}

// ---------------------------------------------------------------------------
// Baselines

std::string to_string(Method method) {
  switch (method) {
    case Method::proposed:
      return "proposed";
    case Method::linear_svm:
      return "linear_svm";
    case Method::logistic:
      return "logistic";
    case Method::decision_tree:
      return "decision_tree";
  }
  return "proposed";
}

Method parse_method(const std::string& name) {
  for (auto m : all_methods())
    if (to_string(m) == name) return m;
  throw ValidationError("unknown method '" + name + "' (expected proposed, linear_svm, logistic or decision_tree)");
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::proposed, Method::linear_svm, Method::logistic,
                                           Method::decision_tree};
  return methods;
}

namespace {

Evaluation hinge_objective(const LinearModel& model, const Dataset& data, double alpha) {
  const std::size_t d = data.dim();
  Gradient g{Vector(d, 0.0), 0.0};
  double loss = 0.0;
  for (const auto& e : data.examples()) {
    const double y = sign_of(e.y());
    const double m = y * model.margin(e.x());
    if (m < 1.0) {
      loss += 1.0 - m;
      for (std::size_t j = 0; j < d; ++j) g.w[j] -= y * e.x()[j];
      g.b -= y;
    }
  }
  const double n = static_cast<double>(data.size());
  double sq = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    g.w[j] = g.w[j] / n + alpha * model.w()[j];
    sq += model.w()[j] * model.w()[j];
  }
  g.b /= n;
  return {loss / n + 0.5 * alpha * sq, std::move(g)};
}

}  // namespace

BaselineFit fit_baseline(const Dataset& data, Method method, const HyperParams& hp, OptimizerKind optimizer,
                         std::uint64_t seed) {
  hp.validate();
  if (data.count(Label::positive) == 0 || data.count(Label::negative) == 0) {
    throw ValidationError("baseline needs both classes; the data has a single label");
  }
  switch (method) {
    case Method::logistic: {
      TrainConfig cfg;
      cfg.hp = hp;
      cfg.hp.rho = 0.0;
      cfg.optimizer = optimizer;
      cfg.policy = NoisePolicy::off;
      cfg.seed = seed;
      TrainedModel t = adaptive_fit(data, cfg);
      return {std::move(t.model), std::move(t.convergence)};
    }
    case Method::linear_svm: {
      const ObjectiveFn objective = [&](const LinearModel& m) { return hinge_objective(m, data, hp.alpha); };
      OptimResult r = run_until_converged(objective, LinearModel(data.dim()), OptimizerKind::sgd, hp);
      return {std::move(r.model), std::move(r.record)};
    }
    case Method::decision_tree:
      return {fit_tree(data, 5), std::nullopt};
    case Method::proposed:
      break;
  }
  throw ValidationError("fit_baseline: 'proposed' is not a baseline; use adaptive_fit");
}

Label predict(const TreeModel& model, std::span<const double> x) { return model.predict(x); }

Label predict(const BaselineModel& model, std::span<const double> x) {
  return std::visit([&](const auto& m) { return halfspace::predict(m, x); }, model);
}

// ---------------------------------------------------------------------------
// Metrics

double accuracy_from_counts(std::size_t true_positives, std::size_t true_negatives, std::size_t total) {
  if (total == 0) throw ValidationError("accuracy of an empty sample");
  if (true_positives + true_negatives > total) throw ValidationError("more correct predictions than samples");
  return static_cast<double>(true_positives + true_negatives) / static_cast<double>(total);
}

namespace {

template <class Model>
double count_accuracy(const Model& model, const Dataset& data) {
  std::size_t tp = 0;
  std::size_t tn = 0;
  for (const auto& e : data.examples()) {
    const Label p = predict(model, e.x());
    if (p != e.y()) continue;
    (p == Label::positive ? tp : tn) += 1;
  }
  return accuracy_from_counts(tp, tn, data.size());
}

}  // namespace

double accuracy(const LinearModel& model, const Dataset& data) { return count_accuracy(model, data); }
double accuracy(const BaselineModel& model, const Dataset& data) { return count_accuracy(model, data); }

std::vector<RateValue> noise_sensitivity(std::span<const RateValue> accuracies) {
  if (accuracies.size() < 2) throw ValidationError("noise sensitivity needs at least 2 rows");
  std::vector<RateValue> out;
  out.reserve(accuracies.size() - 1);
  for (std::size_t i = 1; i < accuracies.size(); ++i) {
    const double dr = accuracies[i].rate - accuracies[i - 1].rate;
    if (!(dr > 0.0)) {
      throw ValidationError("noise rates must be strictly increasing; found " + format_double(accuracies[i - 1].rate) +
                            " then " + format_double(accuracies[i].rate));
    }
    out.push_back({accuracies[i].rate, std::abs(accuracies[i].value - accuracies[i - 1].value) / dr});
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  auto splitmix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return splitmix(splitmix(a) ^ (b + 0x632be59bd9b4e019ULL));
}

}  // namespace halfspace
