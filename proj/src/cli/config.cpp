#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "halfspace/cli.hpp"

namespace halfspace::cli {

namespace {

double parse_real(const std::string& text, const std::string& field) {
  std::string_view s(text);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ValidationError(field + ": cannot parse '" + text + "' as a number");
  }
  return v;
}

double round12(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace

std::vector<double> parse_rates(const std::vector<std::string>& items) {
  std::vector<double> rates;
  for (const auto& item : items) {
    const auto first = item.find(':');
    if (first == std::string::npos) {
      rates.push_back(parse_real(item, "--rates"));
      continue;
    }
    const auto second = item.find(':', first + 1);
    if (second == std::string::npos) throw ValidationError("--rates: range must be start:stop:step, got '" + item + "'");
    const double start = parse_real(item.substr(0, first), "--rates");
    const double stop = parse_real(item.substr(first + 1, second - first - 1), "--rates");
    const double step = parse_real(item.substr(second + 1), "--rates");
    if (!(step > 0.0)) throw ValidationError("--rates: range step must be > 0");
    for (int k = 0;; ++k) {
      const double v = round12(start + k * step);
      if (v > stop + 1e-12) break;
      rates.push_back(v);
    }
  }
  return rates;
}

std::vector<Method> parse_methods(const std::vector<std::string>& items) {
  std::vector<Method> methods;
  for (const auto& item : items) {
    if (item == "all") {
      methods.insert(methods.end(), all_methods().begin(), all_methods().end());
    } else {
      methods.push_back(parse_method(item));
    }
  }
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
  return methods;
}

void RunConfig::validate() const {
  try {
    hp.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("hyperparameters: ") + e.what());
  }
  if (command == Command::train || command == Command::detect) {
    if (!data) throw ValidationError("--data: a dataset path is required");
    return;
  }
  if (command != Command::bench) return;
  if (methods.empty()) throw ValidationError("--methods: the method list is empty");
  if (rates.empty()) throw ValidationError("--rates: the noise-rate list is empty");
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!(rates[i] >= 0.0 && rates[i] < 1.0)) {
      throw ValidationError("--rates: " + format_double(rates[i]) + " is outside [0, 1)");
    }
    if (i > 0 && !(rates[i] > rates[i - 1])) throw ValidationError("--rates: rates must be sorted and distinct");
  }
  if (seeds < 1) throw ValidationError("--seeds: must be >= 1");
  if (n < 10) throw ValidationError("--n: need at least 10 examples");
  if (d < 1) throw ValidationError("--d: must be >= 1");
  if (!(margin >= 0.0)) throw ValidationError("--margin: must be >= 0");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ValidationError("--test-fraction: must be in (0, 1)");
}

std::string manifest_text(const RunConfig& cfg) {
  std::ostringstream o;
  auto q = [](const std::string& s) { return "\"" + s + "\""; };
  o << "# halfspace bench manifest; replay with: halfspace bench --config <this file> --out <dir>\n";
  o << "[bench]\n";
  o << "n = " << cfg.n << "\n";
  o << "d = " << cfg.d << "\n";
  o << "margin = " << format_double(cfg.margin) << "\n";
  o << "noise-mode = " << q(to_string(cfg.noise_mode)) << "\n";
  o << "test-fraction = " << format_double(cfg.test_fraction) << "\n";
  o << "rates = [";
  for (std::size_t i = 0; i < cfg.rates.size(); ++i) o << (i ? ", " : "") << format_double(cfg.rates[i]);
  o << "]\n";
  o << "methods = [";
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) o << (i ? ", " : "") << q(to_string(cfg.methods[i]));
  o << "]\n";
  o << "seeds = " << cfg.seeds << "\n";
  o << "seed = " << cfg.seed << "\n";
  o << "optimizer = " << q(to_string(cfg.optimizer)) << "\n";
  o << "baseline-optimizer = " << q(to_string(cfg.baseline_optimizer)) << "\n";
  o << "policy = " << q(to_string(cfg.policy)) << "\n";
  o << "lambda = " << format_double(cfg.hp.lambda) << "\n";
  o << "alpha = " << format_double(cfg.hp.alpha) << "\n";
  o << "rho = " << format_double(cfg.hp.rho) << "\n";
  o << "eta = " << format_double(cfg.hp.eta) << "\n";
  o << "beta1 = " << format_double(cfg.hp.beta1) << "\n";
  o << "beta2 = " << format_double(cfg.hp.beta2) << "\n";
  o << "epsilon = " << format_double(cfg.hp.epsilon) << "\n";
  o << "nu = " << format_double(cfg.hp.nu) << "\n";
  o << "nu-auto = " << (cfg.nu_auto ? "true" : "false") << "\n";
  if (cfg.hp.gamma) o << "gamma = " << format_double(*cfg.hp.gamma) << "\n";
  o << "tau = " << format_double(cfg.hp.tau) << "\n";
  o << "max-iterations = " << cfg.hp.max_iterations << "\n";
  o << "tol = " << format_double(cfg.hp.tol) << "\n";
  return o.str();
}

}  // namespace halfspace::cli
