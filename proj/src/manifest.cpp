#include <json.hpp>

#include "topocrop/pipeline.hpp"

namespace topocrop {

namespace {

nlohmann::json config_json(const PipelineConfig& cfg) {
  nlohmann::json j;
  j["smooth"] = cfg.smooth_radius;
  if (cfg.border_band) {
    j["border"] = *cfg.border_band;
  } else {
    j["border"] = "auto";
  }
  j["connectivity"] = cfg.connectivity == Connectivity::four ? 4 : 8;
  j["invert"] = cfg.invert;
  j["margin"] = cfg.margin;
  j["ratio"] = cfg.split_ratio;
  j["seed"] = cfg.seed;
  j["strict"] = cfg.strict;
  j["emit_diagrams"] = cfg.emit_diagrams;
  j["emit_masks"] = cfg.emit_masks;
  return j;
}

nlohmann::json record_json(const ImageRecord& record) {
  nlohmann::json j;
  j["filename"] = record.filename;
  j["status"] = to_string(record.status);
  j["subset"] = record.subset;
  j["threshold"] = record.threshold;
  j["finite_pair_count"] = record.finite_pair_count;
  j["selected_count"] = record.selected_count;
  if (record.bbox) {
    j["bbox"] = {{"top", record.bbox->top},
                 {"bottom", record.bbox->bottom},
                 {"left", record.bbox->left},
                 {"right", record.bbox->right}};
  }
  j["duration_ms"] = record.duration_ms;
  if (record.error_message) j["error_message"] = *record.error_message;
  return j;
}

}  // namespace

std::string manifest_to_json(const Manifest& manifest) {
  nlohmann::json j;
  j["config"] = config_json(manifest.config);
  j["images"] = {{"total", manifest.total_images},     {"processed", manifest.processed},
                 {"fallback_original", manifest.fallback}, {"error", manifest.errors},
                 {"train", manifest.train_count},      {"test", manifest.test_count}};
  // Scheduling and timing; excluded when comparing runs.
  j["run"] = {{"jobs", manifest.config.jobs}, {"wall_clock_ms", manifest.wall_clock_ms}};
  j["records"] = nlohmann::json::array();
  for (const auto& record : manifest.records) j["records"].push_back(record_json(record));
  return j.dump(2) + "\n";
}

}  // namespace topocrop
