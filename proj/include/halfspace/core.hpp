#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace halfspace {

using Vector = std::vector<double>;

// Error hierarchy. The CLI maps each family onto an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input, bad configuration, precondition failure (exit 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Constraint set of an optimization problem is empty (e.g. nu * N < 1).
class InfeasibleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// File system or stream failure (exit 2).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values or a solver that cannot make progress (exit 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

enum class Label : std::int8_t { negative = -1, positive = 1 };

inline double sign_of(Label y) { return static_cast<double>(static_cast<int>(y)); }
inline Label flip(Label y) { return y == Label::positive ? Label::negative : Label::positive; }
Label label_from_int(long value);

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
bool all_finite(std::span<const double> v);

class LabeledExample {
 public:
  LabeledExample(Vector x, Label y);

  const Vector& x() const { return x_; }
  Label y() const { return y_; }
  std::size_t dim() const { return x_.size(); }

  bool operator==(const LabeledExample&) const = default;

 private:
  Vector x_;
  Label y_;
};

/// Nonempty, dimension-consistent sequence of examples. Single-class data is legal.
class Dataset {
 public:
  explicit Dataset(std::vector<LabeledExample> examples);

  const std::vector<LabeledExample>& examples() const { return examples_; }
  const LabeledExample& operator[](std::size_t i) const { return examples_[i]; }
  std::size_t size() const { return examples_.size(); }
  std::size_t dim() const { return dim_; }

  std::size_t count(Label y) const;
  /// Feature vectors of the examples carrying label y, in dataset order.
  std::vector<Vector> features_of(Label y) const;
  /// Indices of the examples carrying label y, in dataset order.
  std::vector<std::size_t> indices_of(Label y) const;
  /// Sub-dataset in the given index order.
  Dataset subset(std::span<const std::size_t> indices) const;

  bool operator==(const Dataset&) const = default;

 private:
  std::vector<LabeledExample> examples_;
  std::size_t dim_;
};

/// Halfspace classifier sign(w.x + b) with sign(0) = +1.
class LinearModel {
 public:
  explicit LinearModel(std::size_t dim) : w_(dim, 0.0), b_(0.0) {}
  LinearModel(Vector w, double b);

  const Vector& w() const { return w_; }
  double b() const { return b_; }
  std::size_t dim() const { return w_.size(); }

  double margin(std::span<const double> x) const;

  bool operator==(const LinearModel&) const = default;

 private:
  Vector w_;
  double b_;
};

Label predict(const LinearModel& model, std::span<const double> x);

/// Per-example noise rate in [0, 1].
class NoiseProfile {
 public:
  NoiseProfile() = default;
  explicit NoiseProfile(Vector rates);
  static NoiseProfile zeros(std::size_t n) { return NoiseProfile(Vector(n, 0.0)); }

  const Vector& rates() const { return rates_; }
  std::size_t size() const { return rates_.size(); }
  double operator[](std::size_t i) const { return rates_[i]; }
  double mean() const;

  bool operator==(const NoiseProfile&) const = default;

 private:
  Vector rates_;
};

/// Hyperparameters shared by the loss, optimizers, detector and training loop.
/// Range checks run in validate(); every consumer calls it on entry.
struct HyperParams {
  double lambda = 0.1;        // noise-penalty coefficient
  double alpha = 1e-3;        // elastic net strength
  double rho = 0.5;           // L1 share of the elastic net penalty
  double eta = 0.01;          // learning rate (SGD step, Adam step size)
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double nu = 0.2;
  std::optional<double> gamma;  // RBF width; unset means 1 / (d * var(features))
  double tau = 0.9;             // skip threshold
  int max_iterations = 1000;
  double tol = 1e-6;

  void validate() const;
};

struct CsvOptions {
  bool header = false;
};

Dataset load_dataset(const std::filesystem::path& path, CsvOptions opts = {});
Dataset parse_dataset(const std::string& text, CsvOptions opts = {});
/// Shortest round-trip decimal form, labels as -1/1.
std::string to_csv(const Dataset& data);
void save_dataset(const Dataset& data, const std::filesystem::path& path);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

}  // namespace halfspace
