#include "halfspace/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace halfspace {

Label label_from_int(long value) {
  if (value == 1) return Label::positive;
  if (value == -1) return Label::negative;
  throw ValidationError("label must be -1 or +1, got " + std::to_string(value));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); });
}

LabeledExample::LabeledExample(Vector x, Label y) : x_(std::move(x)), y_(y) {
  if (!all_finite(x_)) throw ValidationError("feature vector contains NaN or Inf");
  if (y_ != Label::positive && y_ != Label::negative) throw ValidationError("label must be -1 or +1");
}

Dataset::Dataset(std::vector<LabeledExample> examples) : examples_(std::move(examples)), dim_(0) {
  if (examples_.empty()) throw ValidationError("dataset is empty");
  dim_ = examples_.front().dim();
  if (dim_ == 0) throw ValidationError("dataset has zero feature dimension");
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    if (examples_[i].dim() != dim_) {
      throw ValidationError("example " + std::to_string(i) + " has dimension " +
                            std::to_string(examples_[i].dim()) + ", expected " + std::to_string(dim_));
    }
  }
}

std::size_t Dataset::count(Label y) const {
  return static_cast<std::size_t>(
      std::count_if(examples_.begin(), examples_.end(), [y](const auto& e) { return e.y() == y; }));
}

std::vector<Vector> Dataset::features_of(Label y) const {
  std::vector<Vector> out;
  for (const auto& e : examples_)
    if (e.y() == y) out.push_back(e.x());
  return out;
}

std::vector<std::size_t> Dataset::indices_of(Label y) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < examples_.size(); ++i)
    if (examples_[i].y() == y) out.push_back(i);
  return out;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<LabeledExample> out;
  out.reserve(indices.size());
  for (auto i : indices) {
    if (i >= examples_.size()) throw ValidationError("subset index out of range");
    out.push_back(examples_[i]);
  }
  return Dataset(std::move(out));
}

LinearModel::LinearModel(Vector w, double b) : w_(std::move(w)), b_(b) {
  if (!all_finite(w_) || !std::isfinite(b_)) throw ValidationError("linear model has non-finite entries");
}

double LinearModel::margin(std::span<const double> x) const {
  if (x.size() != w_.size()) {
    throw ValidationError("dimension mismatch: model has " + std::to_string(w_.size()) + ", input has " +
                          std::to_string(x.size()));
  }
  return dot(w_, x) + b_;
}

Label predict(const LinearModel& model, std::span<const double> x) {
  return model.margin(x) >= 0.0 ? Label::positive : Label::negative;
}

NoiseProfile::NoiseProfile(Vector rates) : rates_(std::move(rates)) {
  for (double r : rates_)
    if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("noise rate outside [0, 1]");
}

double NoiseProfile::mean() const {
  if (rates_.empty()) return 0.0;
  return std::accumulate(rates_.begin(), rates_.end(), 0.0) / static_cast<double>(rates_.size());
}

void HyperParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ValidationError(std::string("invalid hyperparameter: ") + what);
  };
  require(std::isfinite(lambda) && lambda >= 0.0, "lambda must be >= 0");
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
  require(rho >= 0.0 && rho <= 1.0, "rho must be in [0, 1]");
  require(std::isfinite(eta) && eta > 0.0, "eta must be > 0");
  require(beta1 >= 0.0 && beta1 < 1.0, "beta1 must be in [0, 1)");
  require(beta2 >= 0.0 && beta2 < 1.0, "beta2 must be in [0, 1)");
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be > 0");
  require(nu > 0.0 && nu <= 1.0, "nu must be in (0, 1]");
  require(!gamma || (std::isfinite(*gamma) && *gamma > 0.0), "gamma must be > 0");
  require(tau > 0.0 && tau <= 1.0, "tau must be in (0, 1]");
  require(max_iterations >= 1, "max_iterations must be >= 1");
  require(std::isfinite(tol) && tol >= 0.0, "tol must be >= 0");
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct RawRow {
  std::size_t line;
  Vector x;
  double label;
};

}  // namespace

Dataset parse_dataset(const std::string& text, CsvOptions opts) {
  std::vector<RawRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (opts.header && line_no == 1) continue;
    std::string_view view = trim(line);
    if (view.empty()) continue;

    std::vector<double> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = view.find(',', start);
      const auto cell = view.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      const auto value = parse_number(cell);
      if (!value) {
        throw ValidationError("line " + std::to_string(line_no) + ": malformed field '" + std::string(trim(cell)) +
                              "'");
      }
      if (!std::isfinite(*value)) {
        throw ValidationError("line " + std::to_string(line_no) + ": non-finite value '" +
                              std::string(trim(cell)) + "'");
      }
      fields.push_back(*value);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() < 2) {
      throw ValidationError("line " + std::to_string(line_no) + ": need at least one feature and a label");
    }
    if (width == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                            " columns, found " + std::to_string(fields.size()));
    }
    const double label = fields.back();
    fields.pop_back();
    if (label != -1.0 && label != 0.0 && label != 1.0) {
      throw ValidationError("line " + std::to_string(line_no) + ": label must be one of -1, +1, 0, 1");
    }
    rows.push_back({line_no, std::move(fields), label});
  }
  if (rows.empty()) throw ValidationError("dataset file contains no rows");

  const bool has_zero = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.label == 0.0; });
  const bool has_minus = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.label == -1.0; });
  if (has_zero && has_minus) {
    throw ValidationError("labels mix the 0/1 and -1/+1 encodings");
  }

  std::vector<LabeledExample> examples;
  examples.reserve(rows.size());
  for (auto& r : rows) {
    const Label y = r.label > 0.0 ? Label::positive : Label::negative;
    examples.emplace_back(std::move(r.x), y);
  }
  return Dataset(std::move(examples));
}

Dataset load_dataset(const std::filesystem::path& path, CsvOptions opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return parse_dataset(buf.str(), opts);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw NumericalError("cannot format value");
  return std::string(buf, ptr);
}

std::string to_csv(const Dataset& data) {
  std::string out;
  for (const auto& e : data.examples()) {
    for (double v : e.x()) {
      out += format_double(v);
      out += ',';
    }
    out += e.y() == Label::positive ? "1" : "-1";
    out += '\n';
  }
  return out;
}

void save_dataset(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << to_csv(data);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace halfspace
