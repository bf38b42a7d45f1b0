#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topocrop/cropper.hpp"
#include "topocrop/persistence.hpp"
#include "topocrop/raster.hpp"

namespace topocrop {

struct PipelineConfig {
  std::size_t smooth_radius = 1;
  /// nullopt means auto: max(1, round(0.05 * min(w, h))).
  std::optional<std::size_t> border_band;
  Connectivity connectivity = Connectivity::four;
  bool invert = false;
  std::size_t margin = 0;
  double split_ratio = 0.9;
  std::uint64_t seed = 0;
  /// 0 picks std::thread::hardware_concurrency().
  std::size_t jobs = 0;
  bool strict = false;
  bool emit_diagrams = false;
  bool emit_masks = false;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

enum class ImageStatus { processed, fallback_original, error };

const char* to_string(ImageStatus status) noexcept;

struct ImageRecord {
  std::string filename;
  ImageStatus status = ImageStatus::error;
  double threshold = 0.0;
  std::size_t finite_pair_count = 0;
  std::size_t selected_count = 0;
  std::optional<BoundingBox> bbox;
  double duration_ms = 0.0;
  std::optional<std::string> error_message;
  /// "train" or "test"; empty outside batch runs.
  std::string subset;
};

struct Manifest {
  PipelineConfig config;
  std::size_t total_images = 0;
  std::size_t processed = 0;
  std::size_t fallback = 0;
  std::size_t errors = 0;
  std::size_t train_count = 0;
  std::size_t test_count = 0;
  double wall_clock_ms = 0.0;
  std::vector<ImageRecord> records;
};

struct ProcessResult {
  RgbImage output;
  BinaryMask mask;
  PersistenceDiagram diagram;
  ImageRecord record;
};

/// gray -> (invert) -> smooth -> border band -> persistence -> threshold
/// -> mask -> bounding box (+margin) -> crop of the original RGB image.
/// An empty diagram or mask yields the input unchanged with status
/// fallback_original.
ProcessResult process_image(const RgbImage& rgb, const PipelineConfig& cfg);

/// The grayscale image the filtration runs on (after inversion and TIM).
GrayImage prepare_filtration_image(const RgbImage& rgb, const PipelineConfig& cfg);

/// Sorted copy shuffled by Fisher-Yates driven by mt19937_64(seed), with
/// rejection-sampled bounded draws so partitions are identical on every
/// platform. train = first floor(ratio * N).
std::pair<std::vector<std::string>, std::vector<std::string>> split_dataset(
    std::vector<std::string> filenames, double ratio, std::uint64_t seed);

/// Regular files with .png/.jpg/.jpeg extensions (any case), sorted.
std::vector<std::string> list_images(const std::filesystem::path& dir);

/// Builds train_dir, test_dir, train_dir_TIP, test_dir_TIP and
/// diagnostics/ under out_root. Throws EmptyInput, IoError, and in
/// strict mode the first per-image failure as Error.
Manifest run_batch(const std::filesystem::path& in_dir, const std::filesystem::path& out_root,
                   const PipelineConfig& cfg);

std::string manifest_to_json(const Manifest& manifest);

}  // namespace topocrop
