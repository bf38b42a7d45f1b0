#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "topocrop/codec.hpp"
#include "topocrop/errors.hpp"
#include "topocrop/file_io.hpp"
#include "topocrop/pipeline.hpp"

namespace topocrop::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw flag text as given on the command line or in the config file,
// validated only once both sources are merged.
struct FlagValues {
  std::optional<std::string> connectivity;
  std::optional<std::string> smooth;
  std::optional<std::string> border;
  std::optional<std::string> margin;
  std::optional<std::string> seed;
  std::optional<std::string> jobs;
  std::optional<std::string> ratio;
  std::optional<std::string> emit;
  std::optional<bool> invert;
  std::optional<bool> strict;
};

struct Bindings {
  std::string connectivity, smooth, border, margin, seed, jobs, ratio, emit, config, out;
  CLI::Option* connectivity_opt = nullptr;
  CLI::Option* smooth_opt = nullptr;
  CLI::Option* border_opt = nullptr;
  CLI::Option* margin_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* ratio_opt = nullptr;
  CLI::Option* emit_opt = nullptr;
  CLI::Option* invert_opt = nullptr;
  CLI::Option* strict_opt = nullptr;
  CLI::Option* config_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

void add_filtration_flags(CLI::App& cmd, Bindings& b) {
  b.connectivity_opt = cmd.add_option("--connectivity", b.connectivity, "Pixel adjacency: 4 or 8 (default 4)");
  b.smooth_opt = cmd.add_option("--smooth", b.smooth, "Box smoothing radius in pixels (default 1)");
  b.border_opt = cmd.add_option("--border", b.border, "Border band width in pixels, or auto (default auto)");
  b.invert_opt = cmd.add_flag("--invert", "Invert intensities before filtration (bright objects)");
  b.config_opt = cmd.add_option("--config", b.config, "Flat JSON file of flag values; flags override it");
}

void add_split_flags(CLI::App& cmd, Bindings& b) {
  b.seed_opt = cmd.add_option("--seed", b.seed, "Split shuffle seed (default 0)");
  b.ratio_opt = cmd.add_option("--ratio", b.ratio, "Training fraction (default 0.9)");
}

FlagValues collect(const Bindings& b) {
  FlagValues v;
  const auto take = [](CLI::Option* opt, const std::string& value, std::optional<std::string>& dst) {
    if (opt && opt->count() > 0) dst = value;
  };
  take(b.connectivity_opt, b.connectivity, v.connectivity);
  take(b.smooth_opt, b.smooth, v.smooth);
  take(b.border_opt, b.border, v.border);
  take(b.margin_opt, b.margin, v.margin);
  take(b.seed_opt, b.seed, v.seed);
  take(b.jobs_opt, b.jobs, v.jobs);
  take(b.ratio_opt, b.ratio, v.ratio);
  take(b.emit_opt, b.emit, v.emit);
  if (b.invert_opt && b.invert_opt->count() > 0) v.invert = true;
  if (b.strict_opt && b.strict_opt->count() > 0) v.strict = true;
  return v;
}

std::string json_scalar(const nlohmann::json& value, const std::string& key) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number()) return value.dump();
  throw UsageError("config key '" + key + "' must be a string or number");
}

/// Fills every flag absent from the command line with the file's value.
void merge_config_file(const fs::path& path, FlagValues& v) {
  std::vector<std::uint8_t> bytes;
  try {
    bytes = read_file(path);
  } catch (const IoError& e) {
    throw UsageError(e.what());
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("invalid config file " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");

  for (const auto& [key, value] : doc.items()) {
    const auto fill = [&](std::optional<std::string>& dst) {
      if (!dst) dst = json_scalar(value, key);
    };
    const auto fill_bool = [&](std::optional<bool>& dst) {
      if (!value.is_boolean()) throw UsageError("config key '" + key + "' must be true or false");
      if (!dst) dst = value.get<bool>();
    };
    if (key == "connectivity") fill(v.connectivity);
    else if (key == "smooth") fill(v.smooth);
    else if (key == "border") fill(v.border);
    else if (key == "margin") fill(v.margin);
    else if (key == "seed") fill(v.seed);
    else if (key == "jobs") fill(v.jobs);
    else if (key == "ratio") fill(v.ratio);
    else if (key == "emit") {
      if (value.is_array()) {
        std::string joined;
        for (const auto& item : value) {
          if (!item.is_string()) throw UsageError("config key 'emit' must list strings");
          joined += (joined.empty() ? "" : ",") + item.get<std::string>();
        }
        if (!v.emit) v.emit = joined;
      } else {
        fill(v.emit);
      }
    }
    else if (key == "invert") fill_bool(v.invert);
    else if (key == "strict") fill_bool(v.strict);
    else throw UsageError("unknown config key '" + key + "'");
  }
}

template <typename T>
T parse_unsigned(const std::string& text, const char* flag) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last)
    throw UsageError(std::string("invalid value for ") + flag + ": '" + text + "'");
  return value;
}

struct EmitSet {
  bool mask = false;
  bool gray = false;
  bool diagram = false;
};

EmitSet parse_emit(const std::string& text) {
  EmitSet set;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item == "mask") set.mask = true;
    else if (item == "gray") set.gray = true;
    else if (item == "diagram") set.diagram = true;
    else if (!item.empty()) throw UsageError("invalid --emit entry '" + item + "' (mask, gray, diagram)");
  }
  return set;
}

PipelineConfig build_config(const FlagValues& v) {
  PipelineConfig cfg;
  if (v.connectivity) {
    if (*v.connectivity == "4") cfg.connectivity = Connectivity::four;
    else if (*v.connectivity == "8") cfg.connectivity = Connectivity::eight;
    else throw UsageError("invalid value for --connectivity: '" + *v.connectivity + "' (4 or 8)");
  }
  if (v.smooth) cfg.smooth_radius = parse_unsigned<std::size_t>(*v.smooth, "--smooth");
  if (v.border && *v.border != "auto")
    cfg.border_band = parse_unsigned<std::size_t>(*v.border, "--border");
  if (v.margin) cfg.margin = parse_unsigned<std::size_t>(*v.margin, "--margin");
  if (v.seed) cfg.seed = parse_unsigned<std::uint64_t>(*v.seed, "--seed");
  if (v.jobs) {
    cfg.jobs = parse_unsigned<std::size_t>(*v.jobs, "--jobs");
    if (cfg.jobs == 0) throw UsageError("--jobs must be at least 1");
  }
  if (v.ratio) {
    double ratio = 0.0;
    const std::string& text = *v.ratio;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), ratio);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !(ratio > 0.0 && ratio < 1.0))
      throw UsageError("invalid value for --ratio: '" + text + "' (must be in (0, 1))");
    cfg.split_ratio = ratio;
  }
  if (v.emit) {
    const EmitSet emit = parse_emit(*v.emit);
    cfg.emit_masks = emit.mask;
    cfg.emit_diagrams = emit.diagram;
  }
  cfg.invert = v.invert.value_or(false);
  cfg.strict = v.strict.value_or(false);
  cfg.validate();
  return cfg;
}

std::string format_threshold(double value) {
  std::ostringstream s;
  s << value;
  return s.str();
}

std::string format_box(const std::optional<BoundingBox>& box) {
  if (!box) return "none";
  return std::to_string(box->top) + "," + std::to_string(box->bottom) + "," +
         std::to_string(box->left) + "," + std::to_string(box->right);
}

int cmd_diagram(const std::string& input, const std::optional<std::string>& out_path,
                const PipelineConfig& cfg, std::ostream& out) {
  const auto bytes = read_file(input);
  const RgbImage rgb = decode_image(bytes);
  const auto diagram = compute_persistence(prepare_filtration_image(rgb, cfg), cfg.connectivity);
  const std::string csv = diagram_to_csv(diagram);
  if (out_path) {
    write_file_atomic(*out_path, csv);
  } else {
    out << csv;
  }
  return kExitOk;
}

int cmd_process(const std::string& input, const fs::path& out_dir, const EmitSet& emit,
                const PipelineConfig& cfg, std::ostream& out) {
  const auto bytes = read_file(input);
  const RgbImage rgb = decode_image(bytes);
  const ProcessResult result = process_image(rgb, cfg);
  const std::string name = fs::path(input).stem().string();

  if (result.record.status == ImageStatus::processed) {
    write_file_atomic(out_dir / (name + ".cropped.jpg"), encode_jpeg(result.output));
  } else if (detect_format(bytes) == ImageFormat::jpeg) {
    write_file_atomic(out_dir / (name + ".cropped.jpg"), bytes);
  } else {
    write_file_atomic(out_dir / (name + ".cropped.jpg"), encode_jpeg(rgb));
  }
  if (emit.mask) write_file_atomic(out_dir / (name + ".mask.png"), encode_png(result.mask));
  if (emit.gray)
    write_file_atomic(out_dir / (name + ".gray.png"), encode_png(prepare_filtration_image(rgb, cfg)));
  if (emit.diagram)
    write_file_atomic(out_dir / (name + ".diagram.csv"), diagram_to_csv(result.diagram));

  out << name << ": status=" << to_string(result.record.status)
      << " threshold=" << format_threshold(result.record.threshold)
      << " bbox=" << format_box(result.record.bbox)
      << " pairs=" << result.record.finite_pair_count
      << " selected=" << result.record.selected_count << '\n';
  return kExitOk;
}

int cmd_batch(const fs::path& in_dir, const fs::path& out_root, const PipelineConfig& cfg,
              std::ostream& out) {
  const Manifest m = run_batch(in_dir, out_root, cfg);
  out << "batch: " << m.total_images << " images, " << m.processed << " processed, " << m.fallback
      << " fallback_original, " << m.errors << " error; train " << m.train_count << " / test "
      << m.test_count << '\n';
  return kExitOk;
}

int cmd_split(const fs::path& in_dir, const std::optional<std::string>& out_path,
              const PipelineConfig& cfg, std::ostream& out) {
  const auto names = list_images(in_dir);
  if (names.empty()) throw EmptyInput(in_dir.string());
  const auto [train, test] = split_dataset(names, cfg.split_ratio, cfg.seed);
  std::string csv = "filename,subset\n";
  for (const auto& n : train) csv += n + ",train\n";
  for (const auto& n : test) csv += n + ",test\n";
  if (out_path) {
    write_file_atomic(*out_path, csv);
  } else {
    out << csv;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topological lesion isolation and cropping for image datasets", "topocrop"};
  app.require_subcommand(1);

  std::string input;
  std::string out_dir;
  std::string in_dir;
  std::string out_root;

  Bindings diagram_flags;
  auto* diagram = app.add_subcommand("diagram", "Write the 0-dimensional persistence diagram as CSV");
  diagram->add_option("input", input, "Input PNG or JPEG")->required();
  add_filtration_flags(*diagram, diagram_flags);
  diagram_flags.out_opt = diagram->add_option("--out", diagram_flags.out, "Output CSV (default stdout)");

  Bindings process_flags;
  auto* process = app.add_subcommand("process", "Isolate and crop the object in one image");
  process->add_option("input", input, "Input PNG or JPEG")->required();
  process->add_option("out_dir", out_dir, "Output directory")->required();
  add_filtration_flags(*process, process_flags);
  process_flags.margin_opt = process->add_option("--margin", process_flags.margin, "Crop margin in pixels (default 0)");
  process_flags.emit_opt = process->add_option("--emit", process_flags.emit, "Extra outputs: mask,gray,diagram");

  Bindings batch_flags;
  auto* batch = app.add_subcommand("batch", "Split a directory 90/10 and write raw and processed trees");
  batch->add_option("in_dir", in_dir, "Directory of input images")->required();
  batch->add_option("out_root", out_root, "Output root")->required();
  add_filtration_flags(*batch, batch_flags);
  add_split_flags(*batch, batch_flags);
  batch_flags.margin_opt = batch->add_option("--margin", batch_flags.margin, "Crop margin in pixels (default 0)");
  batch_flags.jobs_opt = batch->add_option("--jobs", batch_flags.jobs, "Worker threads (default: all cores)");
  batch_flags.strict_opt = batch->add_flag("--strict", "Abort on the first per-image error");
  batch_flags.emit_opt = batch->add_option("--emit", batch_flags.emit, "Diagnostics: mask,diagram");

  Bindings split_flags;
  auto* split = app.add_subcommand("split", "Print the train/test assignment of a directory");
  split->add_option("in_dir", in_dir, "Directory of input images")->required();
  add_split_flags(*split, split_flags);
  split_flags.config_opt = split->add_option("--config", split_flags.config, "Flat JSON file of flag values");
  split_flags.out_opt = split->add_option("--out", split_flags.out, "Output CSV (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Bindings* flags = diagram->parsed()   ? &diagram_flags
                    : process->parsed() ? &process_flags
                    : batch->parsed()   ? &batch_flags
                                        : &split_flags;

  PipelineConfig cfg;
  EmitSet emit;
  try {
    FlagValues values = collect(*flags);
    if (flags->config_opt && flags->config_opt->count() > 0) merge_config_file(flags->config, values);
    cfg = build_config(values);
    if (values.emit) emit = parse_emit(*values.emit);
    if (batch->parsed() && emit.gray) throw UsageError("--emit gray is only available for process");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto out_path = [&]() -> std::optional<std::string> {
    if (flags->out_opt && flags->out_opt->count() > 0) return flags->out;
    return std::nullopt;
  };

  try {
    if (diagram->parsed()) return cmd_diagram(input, out_path(), cfg, out);
    if (process->parsed()) return cmd_process(input, out_dir, emit, cfg, out);
    if (batch->parsed()) return cmd_batch(in_dir, out_root, cfg, out);
    return cmd_split(in_dir, out_path(), cfg, out);
  } catch (const DecodeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const EmptyInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace topocrop::cli
