#include "halfspace/serialize.hpp"

#include <fstream>
#include <sstream>

namespace halfspace {

using nlohmann::json;

json to_json(const LinearModel& model) { return json{{"w", model.w()}, {"b", model.b()}}; }

json to_json(const OcSvmModel& model) {
  return json{{"alphas", model.alphas},
              {"support", model.support_points},
              {"offset", model.offset},
              {"gamma", model.gamma},
              {"nu", model.nu}};
}

json to_json(const PerClassDetector& detector) {
  return json{{"positive", to_json(detector.model_pos)},
              {"negative", to_json(detector.model_neg)},
              {"slope", detector.slope}};
}

json to_json(const ConvergenceRecord& record) {
  return json{{"iterations_used", record.iterations_used},
              {"converged", record.converged},
              {"diverged", record.diverged},
              {"final_objective", record.final_objective},
              {"objective_trace", record.objective_trace}};
}

json to_json(const TrainedModel& trained) {
  return json{{"model", to_json(trained.model)},
              {"convergence", to_json(trained.convergence)},
              {"rates", trained.noise.rates()},
              {"weights", trained.weights},
              {"skipped_count", trained.skipped_count}};
}

LinearModel linear_model_from_json(const json& j) {
  try {
    return LinearModel(j.at("w").get<Vector>(), j.at("b").get<double>());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed linear model JSON: ") + e.what());
  }
}

OcSvmModel ocsvm_from_json(const json& j) {
  try {
    OcSvmModel m;
    m.alphas = j.at("alphas").get<Vector>();
    m.support_points = j.at("support").get<std::vector<Vector>>();
    m.offset = j.at("offset").get<double>();
    m.gamma = j.at("gamma").get<double>();
    m.nu = j.at("nu").get<double>();
    if (m.alphas.size() != m.support_points.size()) throw ValidationError("alphas and support differ in length");
    return m;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed detector JSON: ") + e.what());
  }
}

PerClassDetector detector_from_json(const json& j) {
  try {
    return {ocsvm_from_json(j.at("positive")), ocsvm_from_json(j.at("negative")), j.at("slope").get<double>()};
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed detector JSON: ") + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace halfspace
