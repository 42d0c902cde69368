#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "halfspace/bench.hpp"
#include "halfspace/core.hpp"
#include "halfspace/optim.hpp"
#include "halfspace/train.hpp"

namespace halfspace::cli {

enum class Command { train, detect, bench, report };

/// Everything a command needs. Bench runs are fully described by this struct
/// (minus `out` and `threads`), which is what the manifest records.
struct RunConfig {
  Command command = Command::bench;

  std::optional<std::filesystem::path> data;
  bool header = false;

  // Synthetic data for bench.
  std::size_t n = 2000;
  std::size_t d = 10;
  double margin = 0.0;
  NoiseMode noise_mode = NoiseMode::boundary_flip;
  double test_fraction = 0.2;

  HyperParams hp;
  /// In bench, set nu to max(noise rate, 0.05) for each cell instead of hp.nu.
  bool nu_auto = true;
  OptimizerKind optimizer = OptimizerKind::adam;
  OptimizerKind baseline_optimizer = OptimizerKind::sgd;
  NoisePolicy policy = NoisePolicy::downweight;
  Method method = Method::proposed;  // train only

  std::vector<double> rates;
  std::vector<Method> methods;
  int seeds = 10;
  std::uint64_t seed = 0;

  std::filesystem::path out;
  unsigned threads = 0;  // 0 = hardware concurrency

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

/// Expands "0.1:0.5:0.1" ranges and plain numbers into a list of rates.
std::vector<double> parse_rates(const std::vector<std::string>& items);
std::vector<Method> parse_methods(const std::vector<std::string>& items);

struct CellResult {
  double rate = 0.0;
  int seed_index = 0;
  std::map<Method, double> accuracy;
  std::map<Method, std::optional<int>> iterations;
  std::size_t skipped = 0;
};

struct ExperimentReport {
  std::vector<Method> methods;       // canonical order
  std::vector<MetricsRow> rows;      // one per requested rate
  std::optional<MetricsRow> anchor;  // clean run used for the first sensitivity, when 0 was not requested
  std::vector<CellResult> cells;
};

/// Runs every (rate, seed) cell. Cells are independent; each derives its
/// seeds from (seed, seed index, rate), so results do not depend on the
/// thread count or on which other rates are in the grid.
ExperimentReport run_experiment(const RunConfig& cfg);

std::string accuracy_csv(const ExperimentReport& report);
std::string sensitivity_csv(const ExperimentReport& report);
std::string convergence_csv(const ExperimentReport& report);
std::string markdown_summary(const ExperimentReport& report);
std::string manifest_text(const RunConfig& cfg);

/// Writes accuracy.csv, sensitivity.csv, convergence.csv, summary.md and
/// manifest.toml into cfg.out.
ExperimentReport run_bench(const RunConfig& cfg);

/// Rebuilds summary.md from the CSVs in `dir` and returns it.
std::string run_report(const std::filesystem::path& dir);

/// Full command line entry point. Returns the process exit code:
/// 0 success, 1 configuration or validation error, 2 I/O error, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace halfspace::cli
