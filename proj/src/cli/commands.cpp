#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "halfspace/cli.hpp"
#include "halfspace/noise.hpp"
#include "halfspace/serialize.hpp"

namespace halfspace::cli {

namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

CellResult run_cell(const RunConfig& cfg, double rate, int seed_index) {
  const std::uint64_t data_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(seed_index));
  const std::uint64_t noise_seed = mix_seed(data_seed, std::bit_cast<std::uint64_t>(rate));
  const std::uint64_t fit_seed = mix_seed(noise_seed, 0x5eed);

  const HalfspaceSample sample = gen_halfspace(cfg.n, cfg.d, cfg.margin, data_seed);
  const auto n_test = static_cast<std::size_t>(std::llround(cfg.test_fraction * static_cast<double>(cfg.n)));
  const std::size_t n_train = cfg.n - std::max<std::size_t>(n_test, 1);
  std::vector<std::size_t> train_idx(n_train);
  std::vector<std::size_t> test_idx(cfg.n - n_train);
  for (std::size_t i = 0; i < n_train; ++i) train_idx[i] = i;
  for (std::size_t i = n_train; i < cfg.n; ++i) test_idx[i - n_train] = i;
  const Dataset test = sample.data.subset(test_idx);
  const CorruptedData train =
      inject_noise(sample.data.subset(train_idx), NoiseSpec{rate, cfg.noise_mode, noise_seed}, sample.truth);

  CellResult cell;
  cell.rate = rate;
  cell.seed_index = seed_index;
  for (Method m : cfg.methods) {
    if (m == Method::proposed) {
      TrainConfig tc;
      tc.hp = cfg.hp;
      if (cfg.nu_auto) tc.hp.nu = std::max(rate, 0.05);
      tc.optimizer = cfg.optimizer;
      tc.policy = cfg.policy;
      tc.seed = fit_seed;
      const TrainedModel t = adaptive_fit(train.data, tc);
      cell.accuracy[m] = accuracy(t.model, test);
      cell.iterations[m] = t.convergence.iterations_used;
      cell.skipped = t.skipped_count;
    } else {
      const BaselineFit fit = fit_baseline(train.data, m, cfg.hp, cfg.baseline_optimizer, fit_seed);
      cell.accuracy[m] = accuracy(fit.model, test);
      cell.iterations[m] = fit.convergence ? std::optional<int>(fit.convergence->iterations_used) : std::nullopt;
    }
  }
  return cell;
}

MetricsRow aggregate(const std::vector<Method>& methods, double rate, const std::vector<const CellResult*>& cells) {
  MetricsRow row;
  row.noise_rate = rate;
  for (Method m : methods) {
    std::vector<double> acc;
    std::vector<double> iters;
    for (const auto* c : cells) {
      acc.push_back(c->accuracy.at(m));
      if (const auto& it = c->iterations.at(m)) iters.push_back(*it);
    }
    double mean = 0.0;
    for (double a : acc) mean += a;
    mean /= static_cast<double>(acc.size());
    double ss = 0.0;
    for (double a : acc) ss += (a - mean) * (a - mean);
    row.accuracy_by_method[m] = mean;
    row.accuracy_std_by_method[m] = acc.size() > 1 ? std::sqrt(ss / static_cast<double>(acc.size() - 1)) : 0.0;
    row.iterations_by_method[m] = iters.empty() ? std::nullopt : std::optional<double>(median(iters));
  }
  return row;
}

}  // namespace

ExperimentReport run_experiment(const RunConfig& cfg) {
  cfg.validate();
  ExperimentReport report;
  report.methods = cfg.methods;
  std::sort(report.methods.begin(), report.methods.end());

  std::vector<double> grid = cfg.rates;
  const bool separate_anchor = grid.front() != 0.0;
  if (separate_anchor) grid.insert(grid.begin(), 0.0);

  const std::size_t total = grid.size() * static_cast<std::size_t>(cfg.seeds);
  std::vector<CellResult> cells(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= total) return;
      try {
        cells[k] = run_cell(cfg, grid[k / cfg.seeds], static_cast<int>(k % cfg.seeds));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<MetricsRow> all_rows;
  for (std::size_t r = 0; r < grid.size(); ++r) {
    std::vector<const CellResult*> group;
    for (int s = 0; s < cfg.seeds; ++s) group.push_back(&cells[r * cfg.seeds + s]);
    all_rows.push_back(aggregate(report.methods, grid[r], group));
  }

  for (Method m : report.methods) {
    std::vector<RateValue> series;
    for (const auto& row : all_rows) series.push_back({row.noise_rate, row.accuracy_by_method.at(m)});
    if (series.size() < 2) continue;
    const auto sens = noise_sensitivity(series);
    for (std::size_t i = 0; i < sens.size(); ++i) all_rows[i + 1].sensitivity_by_method[m] = sens[i].value;
  }

  if (separate_anchor) {
    report.anchor = all_rows.front();
    all_rows.erase(all_rows.begin());
    cells.erase(cells.begin(), cells.begin() + cfg.seeds);
  }
  report.rows = std::move(all_rows);
  report.cells = std::move(cells);
  return report;
}

// ---------------------------------------------------------------------------
// CSV and markdown

std::string accuracy_csv(const ExperimentReport& report) {
  std::string s = "noise_rate";
  for (Method m : report.methods) s += "," + to_string(m) + "_mean," + to_string(m) + "_std";
  s += "\n";
  for (const auto& row : report.rows) {
    s += format_double(row.noise_rate);
    for (Method m : report.methods)
      s += "," + fixed(row.accuracy_by_method.at(m)) + "," + fixed(row.accuracy_std_by_method.at(m));
    s += "\n";
  }
  return s;
}

std::string sensitivity_csv(const ExperimentReport& report) {
  std::string s = "noise_rate";
  for (Method m : report.methods) s += "," + to_string(m);
  s += "\n";
  for (const auto& row : report.rows) {
    if (row.sensitivity_by_method.empty()) continue;  // the rate-0 anchor has no predecessor
    s += format_double(row.noise_rate);
    for (Method m : report.methods) s += "," + fixed(row.sensitivity_by_method.at(m));
    s += "\n";
  }
  return s;
}

std::string convergence_csv(const ExperimentReport& report) {
  std::string s = "noise_rate";
  for (Method m : report.methods) s += "," + to_string(m);
  s += "\n";
  for (const auto& row : report.rows) {
    s += format_double(row.noise_rate);
    for (Method m : report.methods) {
      const auto& it = row.iterations_by_method.at(m);
      s += "," + (it ? fixed(*it, 1) : std::string("NA"));
    }
    s += "\n";
  }
  return s;
}

namespace {

using Table = std::vector<std::vector<std::string>>;

Table parse_csv(const std::string& text, const std::string& name) {
  Table t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!t.empty() && cells.size() != t.front().size()) throw ValidationError(name + ": ragged row '" + line + "'");
    t.push_back(std::move(cells));
  }
  if (t.empty()) throw ValidationError(name + ": missing header");
  return t;
}

std::string display_name(const std::string& method) {
  if (method == "proposed") return "Proposed Model";
  if (method == "linear_svm") return "SVM";
  if (method == "logistic") return "Logistic Regression";
  if (method == "decision_tree") return "Decision Tree";
  return method;
}

std::string short_name(const std::string& method) {
  if (method == "proposed") return "PM";
  if (method == "linear_svm") return "SVM";
  if (method == "logistic") return "LR";
  if (method == "decision_tree") return "DT";
  return method;
}

double to_real(const std::string& s, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ValidationError(where + ": bad number '" + s + "'");
  return v;
}

std::string markdown_from_tables(const Table& acc, const Table& sens, const Table& conv) {
  std::ostringstream o;
  o << "# Benchmark summary\n\n";
  o << "Accuracy is measured on a clean held-out test set. Mean ± standard deviation over seeds.\n\n";

  o << "## Model accuracy\n\n| Noise Rate |";
  std::vector<std::string> methods;
  for (std::size_t c = 1; c < acc.front().size(); c += 2) {
    std::string name = acc.front()[c];
    name = name.substr(0, name.size() - std::string("_mean").size());
    methods.push_back(name);
    o << " " << display_name(name) << " Accuracy |";
  }
  o << "\n|---|";
  for (std::size_t i = 0; i < methods.size(); ++i) o << "---|";
  o << "\n";
  for (std::size_t r = 1; r < acc.size(); ++r) {
    o << "| " << acc[r][0] << " |";
    for (std::size_t i = 0; i < methods.size(); ++i) {
      const double mean = to_real(acc[r][1 + 2 * i], "accuracy.csv");
      const double sd = to_real(acc[r][2 + 2 * i], "accuracy.csv");
      o << " " << fixed(100.0 * mean, 2) << "% ± " << fixed(100.0 * sd, 2) << " |";
    }
    o << "\n";
  }

  o << "\n## Sensitivity to noise\n\n|Δaccuracy / Δnoise rate|, the first row anchored at the clean run.\n\n"
    << "| Noise Rate |";
  for (std::size_t c = 1; c < sens.front().size(); ++c) o << " Sensitivity to Noise (" << short_name(sens.front()[c]) << ") |";
  o << "\n|---|";
  for (std::size_t c = 1; c < sens.front().size(); ++c) o << "---|";
  o << "\n";
  for (std::size_t r = 1; r < sens.size(); ++r) {
    o << "| " << sens[r][0] << " |";
    for (std::size_t c = 1; c < sens[r].size(); ++c) o << " " << fixed(to_real(sens[r][c], "sensitivity.csv"), 3) << " |";
    o << "\n";
  }

  o << "\n## Convergence\n\nMedian number of iterations required for convergence.\n\n| Noise Rate |";
  for (std::size_t c = 1; c < conv.front().size(); ++c) o << " " << display_name(conv.front()[c]) << " |";
  o << "\n|---|";
  for (std::size_t c = 1; c < conv.front().size(); ++c) o << "---|";
  o << "\n";
  std::vector<std::vector<double>> columns(conv.front().size());
  for (std::size_t r = 1; r < conv.size(); ++r) {
    o << "| " << conv[r][0] << " |";
    for (std::size_t c = 1; c < conv[r].size(); ++c) {
      if (conv[r][c] == "NA") {
        o << " n/a |";
      } else {
        const double v = to_real(conv[r][c], "convergence.csv");
        columns[c].push_back(v);
        o << " " << fixed(v, 1) << " |";
      }
    }
    o << "\n";
  }
  o << "| all rates (median) |";
  for (std::size_t c = 1; c < conv.front().size(); ++c)
    o << " " << (columns[c].empty() ? std::string("n/a") : fixed(median(columns[c]), 1)) << " |";
  o << "\n\nThe decision tree is a depth-5 CART reference column; it has no iterative fit.\n";
  return o.str();
}

}  // namespace

std::string markdown_summary(const ExperimentReport& report) {
  return markdown_from_tables(parse_csv(accuracy_csv(report), "accuracy.csv"),
                              parse_csv(sensitivity_csv(report), "sensitivity.csv"),
                              parse_csv(convergence_csv(report), "convergence.csv"));
}

ExperimentReport run_bench(const RunConfig& cfg) {
  cfg.validate();
  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  if (ec || !std::filesystem::is_directory(cfg.out)) {
    throw IoError("cannot create output directory '" + cfg.out.string() + "'" + (ec ? ": " + ec.message() : ""));
  }
  // Fail on an unwritable directory before spending time on the grid.
  write_text(cfg.out / "manifest.toml", manifest_text(cfg));
  ExperimentReport report = run_experiment(cfg);
  write_text(cfg.out / "accuracy.csv", accuracy_csv(report));
  write_text(cfg.out / "sensitivity.csv", sensitivity_csv(report));
  write_text(cfg.out / "convergence.csv", convergence_csv(report));
  write_text(cfg.out / "summary.md", markdown_summary(report));
  return report;
}

std::string run_report(const std::filesystem::path& dir) {
  const std::string md = markdown_from_tables(parse_csv(read_text(dir / "accuracy.csv"), "accuracy.csv"),
                                              parse_csv(read_text(dir / "sensitivity.csv"), "sensitivity.csv"),
                                              parse_csv(read_text(dir / "convergence.csv"), "convergence.csv"));
  write_text(dir / "summary.md", md);
  return md;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct Options {
  RunConfig cfg;
  std::vector<std::string> rates{"0.1:0.9:0.1"};
  std::vector<std::string> methods{"all"};
  std::string policy = "downweight";
  std::string optimizer = "adam";
  std::string baseline_optimizer = "sgd";
  std::string noise_mode = "boundary_flip";
  std::string method = "proposed";
  double gamma = 0.0;
  std::string data;
  std::string out;
  std::string scores;
  std::size_t batch_size = 0;
};

void add_hyperparams(CLI::App* app, Options& o, CLI::Option*& gamma_opt) {
  auto& hp = o.cfg.hp;
  app->add_option("--lambda", hp.lambda, "noise-penalty coefficient")->capture_default_str();
  app->add_option("--alpha", hp.alpha, "elastic net strength")->capture_default_str();
  app->add_option("--rho", hp.rho, "L1 share of the elastic net")->capture_default_str();
  app->add_option("--eta", hp.eta, "learning rate")->capture_default_str();
  app->add_option("--beta1", hp.beta1, "Adam first-moment decay")->capture_default_str();
  app->add_option("--beta2", hp.beta2, "Adam second-moment decay")->capture_default_str();
  app->add_option("--epsilon", hp.epsilon, "Adam stabilizer")->capture_default_str();
  app->add_option("--nu", hp.nu, "one-class SVM nu")->capture_default_str();
  gamma_opt = app->add_option("--gamma", o.gamma, "RBF width (default 1/(d var))");
  app->add_option("--tau", hp.tau, "skip threshold")->capture_default_str();
  app->add_option("--max-iterations", hp.max_iterations)->capture_default_str();
  app->add_option("--tol", hp.tol, "convergence tolerance")->capture_default_str();
  app->add_option("--seed", o.cfg.seed, "master seed")->capture_default_str();
}

// CLI11 reads config files at the top level only; move --config in front of the subcommand.
std::vector<std::string> hoist_config(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> hoisted;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      hoisted.push_back(args[i]);
      hoisted.push_back(args[i + 1]);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      --i;
    } else if (args[i].rfind("--config=", 0) == 0) {
      hoisted.push_back(args[i]);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      --i;
    }
  }
  hoisted.insert(hoisted.end(), args.begin(), args.end());
  std::reverse(hoisted.begin(), hoisted.end());  // CLI11 parses a reversed vector
  return hoisted;
}

int command_train(Options& o, std::ostream& out) {
  RunConfig& cfg = o.cfg;
  cfg.validate();
  const Dataset data = load_dataset(*cfg.data, {cfg.header});
  LinearModel model(data.dim());
  std::string summary;
  nlohmann::json doc;
  if (cfg.method == Method::proposed) {
    TrainConfig tc;
    tc.hp = cfg.hp;
    tc.optimizer = cfg.optimizer;
    tc.policy = cfg.policy;
    tc.seed = cfg.seed;
    tc.batch_size = o.batch_size;
    TrainedModel t = adaptive_fit(data, tc);
    if (t.convergence.diverged) throw NumericalError("training diverged (non-finite objective)");
    doc = to_json(t);
    model = t.model;
    summary = " iterations=" + std::to_string(t.convergence.iterations_used) +
              " converged=" + (t.convergence.converged ? "true" : "false") +
              " skipped_count=" + std::to_string(t.skipped_count);
  } else if (cfg.method == Method::logistic || cfg.method == Method::linear_svm) {
    BaselineFit fit = fit_baseline(data, cfg.method, cfg.hp, cfg.optimizer, cfg.seed);
    if (fit.convergence && fit.convergence->diverged) throw NumericalError("training diverged (non-finite objective)");
    model = std::get<LinearModel>(fit.model);
    doc = nlohmann::json{{"model", to_json(model)}, {"convergence", to_json(*fit.convergence)}};
    summary = " iterations=" + std::to_string(fit.convergence->iterations_used) +
              " converged=" + (fit.convergence->converged ? "true" : "false") + " skipped_count=0";
  } else {
    throw ValidationError("--method: train supports proposed, logistic and linear_svm");
  }
  const std::filesystem::path path = o.out.empty() ? std::filesystem::path("model.json") : std::filesystem::path(o.out);
  write_text(path, doc.dump(2) + "\n");
  out << "accuracy=" << fixed(accuracy(model, data)) << summary << "\n";
  return 0;
}

int command_detect(Options& o, std::ostream& out) {
  RunConfig& cfg = o.cfg;
  cfg.validate();
  const Dataset data = load_dataset(*cfg.data, {cfg.header});
  const PerClassDetector detector = fit_detector(data, cfg.hp);
  const Vector decisions = own_class_decisions(detector, data);
  const NoiseProfile profile = noise_profile(detector, data);
  const std::filesystem::path path = o.out.empty() ? std::filesystem::path("detector.json") : std::filesystem::path(o.out);
  write_text(path, to_json(detector).dump(2) + "\n");
  std::size_t above = 0;
  for (double r : profile.rates())
    if (r > cfg.hp.tau) ++above;
  if (!o.scores.empty()) {
    std::string csv = "index,label,decision,rate\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
      csv += std::to_string(i) + "," + (data[i].y() == Label::positive ? "1" : "-1") + "," +
             format_double(decisions[i]) + "," + format_double(profile[i]) + "\n";
    }
    write_text(o.scores, csv);
  }
  out << "n=" << data.size() << " mean_rate=" << fixed(profile.mean()) << " above_tau=" << above << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Noise-robust halfspace learning: train, detect, benchmark and report."};
  app.set_config("--config", "", "TOML-style configuration file; command-line flags take precedence");
  app.require_subcommand(1);

  CLI::Option* gamma_train = nullptr;
  CLI::Option* gamma_detect = nullptr;
  CLI::Option* gamma_bench = nullptr;

  auto* train = app.add_subcommand("train", "fit one model on a CSV dataset");
  train->add_option("--data", o.data, "CSV dataset")->required();
  train->add_flag("--header", o.cfg.header, "skip the first CSV line");
  train->add_option("--policy", o.policy, "skip | downweight | off")->capture_default_str();
  train->add_option("--optimizer", o.optimizer, "adam | sgd")->capture_default_str();
  train->add_option("--method", o.method, "proposed | logistic | linear_svm")->capture_default_str();
  train->add_option("--batch-size", o.batch_size, "0 = full batch")->capture_default_str();
  train->add_option("--out", o.out, "model JSON path (default model.json)");
  add_hyperparams(train, o, gamma_train);

  auto* detect = app.add_subcommand("detect", "fit the per-class noise detector and score every example");
  detect->add_option("--data", o.data, "CSV dataset")->required();
  detect->add_flag("--header", o.cfg.header, "skip the first CSV line");
  detect->add_option("--out", o.out, "detector JSON path (default detector.json)");
  detect->add_option("--scores", o.scores, "optional per-example CSV of decision values and rates");
  add_hyperparams(detect, o, gamma_detect);

  auto* bench = app.add_subcommand("bench", "run the synthetic noise-rate benchmark grid");
  bench->add_option("--rates", o.rates, "noise rates, comma separated or start:stop:step")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--methods", o.methods, "all | proposed,linear_svm,logistic,decision_tree")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--seeds", o.cfg.seeds, "seeds per noise rate")->capture_default_str();
  bench->add_option("--policy", o.policy, "skip | downweight | off")->capture_default_str();
  bench->add_option("--optimizer", o.optimizer, "optimizer of the proposed model")->capture_default_str();
  bench->add_option("--baseline-optimizer", o.baseline_optimizer, "optimizer of the logistic baseline")
      ->capture_default_str();
  bench->add_option("--noise-mode", o.noise_mode, "random_flip | boundary_flip | feature_corrupt")
      ->capture_default_str();
  bench->add_option("--n", o.cfg.n, "examples per synthetic dataset")->capture_default_str();
  bench->add_option("--d", o.cfg.d, "feature dimension")->capture_default_str();
  bench->add_option("--margin", o.cfg.margin, "minimum |w.x + b| of generated points")->capture_default_str();
  bench->add_option("--test-fraction", o.cfg.test_fraction, "clean held-out share")->capture_default_str();
  bench->add_flag("--nu-auto,!--no-nu-auto", o.cfg.nu_auto, "set nu from the noise rate of each cell");
  bench->add_option("--threads", o.cfg.threads, "worker threads (0 = all cores)");
  bench->add_option("--out", o.out, "output directory")->required();
  add_hyperparams(bench, o, gamma_bench);

  auto* report = app.add_subcommand("report", "rebuild summary.md from the CSVs of a bench run");
  report->add_option("--out", o.out, "bench output directory")->required();

  try {
    std::vector<std::string> args = hoist_config(argc, argv);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig& cfg = o.cfg;
    cfg.policy = parse_policy(o.policy);
    cfg.optimizer = parse_optimizer(o.optimizer);
    cfg.baseline_optimizer = parse_optimizer(o.baseline_optimizer);
    cfg.noise_mode = parse_noise_mode(o.noise_mode);
    cfg.method = parse_method(o.method);
    if (!o.data.empty()) cfg.data = o.data;
    cfg.out = o.out;
    for (auto* g : {gamma_train, gamma_detect, gamma_bench})
      if (g && g->count() > 0) cfg.hp.gamma = o.gamma;

    if (train->parsed()) {
      cfg.command = Command::train;
      return command_train(o, out);
    }
    if (detect->parsed()) {
      cfg.command = Command::detect;
      return command_detect(o, out);
    }
    if (bench->parsed()) {
      cfg.command = Command::bench;
      cfg.rates = parse_rates(o.rates);
      cfg.methods = parse_methods(o.methods);
      const ExperimentReport r = run_bench(cfg);
      out << "wrote " << r.rows.size() << " rows to " << cfg.out.string() << "\n";
      return 0;
    }
    cfg.command = Command::report;
    out << run_report(cfg.out);
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace halfspace::cli
