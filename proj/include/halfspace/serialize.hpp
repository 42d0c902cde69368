#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "halfspace/core.hpp"
#include "halfspace/noise.hpp"
#include "halfspace/train.hpp"

namespace halfspace {

// JSON layouts:
//   LinearModel      {"w": [...], "b": r}
//   OcSvmModel       {"alphas": [...], "support": [[...]], "offset": r, "gamma": g, "nu": v}
//   PerClassDetector {"positive": OcSvmModel, "negative": OcSvmModel, "slope": k}
//   TrainedModel     {"model": LinearModel, "convergence": {...}, "rates": [...],
//                     "weights": [...], "skipped_count": n}

nlohmann::json to_json(const LinearModel& model);
nlohmann::json to_json(const OcSvmModel& model);
nlohmann::json to_json(const PerClassDetector& detector);
nlohmann::json to_json(const ConvergenceRecord& record);
nlohmann::json to_json(const TrainedModel& trained);

LinearModel linear_model_from_json(const nlohmann::json& j);
OcSvmModel ocsvm_from_json(const nlohmann::json& j);
PerClassDetector detector_from_json(const nlohmann::json& j);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace halfspace
