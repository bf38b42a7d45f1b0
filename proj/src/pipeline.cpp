#include "topocrop/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "topocrop/codec.hpp"
#include "topocrop/errors.hpp"
#include "topocrop/file_io.hpp"
#include "topocrop/imagecore.hpp"
#include "topocrop/tip.hpp"

namespace topocrop {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

void PipelineConfig::validate() const {
  if (!(split_ratio > 0.0 && split_ratio < 1.0))
    throw std::invalid_argument("split ratio must be strictly between 0 and 1");
}

const char* to_string(ImageStatus status) noexcept {
  switch (status) {
    case ImageStatus::processed:
      return "processed";
    case ImageStatus::fallback_original:
      return "fallback_original";
    case ImageStatus::error:
      return "error";
  }
  return "error";
}

GrayImage prepare_filtration_image(const RgbImage& rgb, const PipelineConfig& cfg) {
  GrayImage gray = rgb_to_gray(rgb);
  if (cfg.invert) gray = invert(gray);
  gray = smooth(gray, cfg.smooth_radius);
  const std::size_t band = cfg.border_band.value_or(auto_border_band(gray.width(), gray.height()));
  return border_modify(gray, band);
}

ProcessResult process_image(const RgbImage& rgb, const PipelineConfig& cfg) {
  const auto start = Clock::now();
  ProcessResult result;
  const GrayImage filtered = prepare_filtration_image(rgb, cfg);
  result.diagram = compute_persistence(filtered, cfg.connectivity);
  result.record.finite_pair_count = result.diagram.finite_pairs.size();

  const auto fallback = [&] {
    result.output = rgb;
    result.mask = BinaryMask(rgb.width(), rgb.height(), 0);
    result.record.status = ImageStatus::fallback_original;
    result.record.selected_count = 0;
    result.record.bbox.reset();
    result.record.duration_ms = elapsed_ms(start);
    return result;
  };

  if (result.diagram.finite_pairs.empty()) return fallback();
  const Threshold threshold = select_threshold(result.diagram);
  result.record.threshold = threshold.value;
  try {
    result.mask = generate_mask(filtered, cfg.connectivity, threshold);
  } catch (const EmptyMask&) {
    return fallback();
  }

  for (const auto& pair : result.diagram.finite_pairs)
    if (static_cast<double>(pair.lifetime()) > threshold.value) ++result.record.selected_count;

  const BoundingBox box =
      expand(bounding_box(result.mask), cfg.margin, rgb.width(), rgb.height());
  result.output = crop(rgb, box);
  result.record.bbox = box;
  result.record.status = ImageStatus::processed;
  result.record.duration_ms = elapsed_ms(start);
  return result;
}

std::vector<std::string> list_images(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg")
      names.push_back(entry.path().filename().string());
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(names.begin(), names.end());
  return names;
}

namespace {

struct BatchLayout {
  fs::path train;
  fs::path test;
  fs::path train_tip;
  fs::path test_tip;
  fs::path diagnostics;
};

BatchLayout make_layout(const fs::path& out_root) {
  BatchLayout layout{out_root / "train_dir", out_root / "test_dir", out_root / "train_dir_TIP",
                     out_root / "test_dir_TIP", out_root / "diagnostics"};
  for (const auto& dir :
       {layout.train, layout.test, layout.train_tip, layout.test_tip, layout.diagnostics}) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }
  return layout;
}

std::vector<std::uint8_t> encode_like(const RgbImage& img, ImageFormat format) {
  return format == ImageFormat::png ? encode_png(img) : encode_jpeg(img);
}

ImageRecord process_file(const fs::path& in_dir, const std::string& name, bool is_train,
                         const BatchLayout& layout, const PipelineConfig& cfg) {
  const auto start = Clock::now();
  ImageRecord record;
  record.filename = name;
  record.subset = is_train ? "train" : "test";
  const fs::path& plain_dir = is_train ? layout.train : layout.test;
  const fs::path& tip_dir = is_train ? layout.train_tip : layout.test_tip;

  std::vector<std::uint8_t> bytes;
  try {
    bytes = read_file(in_dir / name);
    write_file_atomic(plain_dir / name, bytes);
    const RgbImage rgb = decode_image(bytes);
    ProcessResult result = process_image(rgb, cfg);
    if (result.record.status == ImageStatus::processed) {
      write_file_atomic(tip_dir / name, encode_like(result.output, detect_format(bytes)));
    } else {
      write_file_atomic(tip_dir / name, bytes);
    }
    if (cfg.emit_diagrams)
      write_file_atomic(layout.diagnostics / (name + ".diagram.csv"),
                        diagram_to_csv(result.diagram));
    if (cfg.emit_masks)
      write_file_atomic(layout.diagnostics / (name + ".mask.png"), encode_png(result.mask));
    result.record.filename = name;
    result.record.subset = record.subset;
    record = std::move(result.record);
  } catch (const std::exception& e) {
    record.status = ImageStatus::error;
    record.error_message = e.what();
    record.bbox.reset();
    // Keep the TIP directory paired with its unprocessed partner.
    if (!bytes.empty()) {
      try {
        write_file_atomic(tip_dir / name, bytes);
      } catch (const std::exception&) {
      }
    }
  }
  record.duration_ms = elapsed_ms(start);
  return record;
}

}  // namespace

Manifest run_batch(const fs::path& in_dir, const fs::path& out_root, const PipelineConfig& cfg) {
  const auto start = Clock::now();
  cfg.validate();
  const std::vector<std::string> names = list_images(in_dir);
  if (names.empty()) throw EmptyInput(in_dir.string());

  auto [train, test] = split_dataset(names, cfg.split_ratio, cfg.seed);
  std::unordered_map<std::string, bool> in_train;
  for (const auto& n : train) in_train[n] = true;
  for (const auto& n : test) in_train[n] = false;

  const BatchLayout layout = make_layout(out_root);

  Manifest manifest;
  manifest.config = cfg;
  std::size_t jobs = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, names.size());
  manifest.config.jobs = jobs;
  manifest.records.resize(names.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex failure_mutex;
  std::optional<std::string> first_failure;

  const auto worker = [&] {
    for (;;) {
      if (abort.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= names.size()) return;
      ImageRecord record = process_file(in_dir, names[i], in_train.at(names[i]), layout, cfg);
      if (cfg.strict && record.status == ImageStatus::error) {
        std::lock_guard lock(failure_mutex);
        if (!first_failure) first_failure = names[i] + ": " + record.error_message.value_or("");
        abort.store(true);
      }
      // Disjoint slots; no lock needed.
      manifest.records[i] = std::move(record);
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  if (first_failure) throw Error("strict mode: " + *first_failure);

  manifest.total_images = names.size();
  manifest.train_count = train.size();
  manifest.test_count = test.size();
  for (const auto& record : manifest.records) {
    switch (record.status) {
      case ImageStatus::processed:
        ++manifest.processed;
        break;
      case ImageStatus::fallback_original:
        ++manifest.fallback;
        break;
      case ImageStatus::error:
        ++manifest.errors;
        break;
    }
  }
  manifest.wall_clock_ms = elapsed_ms(start);
  write_file_atomic(layout.diagnostics / "manifest.json", manifest_to_json(manifest));
  return manifest;
}

}  // namespace topocrop
