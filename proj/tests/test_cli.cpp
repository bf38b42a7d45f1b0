#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support/batch_fixtures.hpp"
#include "support/fixtures.hpp"
#include "topocrop/codec.hpp"
#include "topocrop/file_io.hpp"

using namespace topocrop;
using namespace topocrop::testing;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_entries(const fs::path& dir) {
  return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}));
}

}  // namespace

TEST_CASE("diagram subcommand") {
  TempDir tmp;
  const auto constant = tmp / "constant.png";
  write_file_atomic(constant, encode_png(GrayImage(8, 8, 100)));
  auto r = run_cli({"diagram", constant.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "birth,death,lifetime\n100,inf,inf\n");

  const auto worked = tmp / "worked.png";
  write_file_atomic(worked, encode_png(gray_from_rows({{9, 9, 9}, {1, 9, 2}, {9, 9, 9}})));
  r = run_cli({"diagram", worked.string(), "--smooth", "0", "--border", "0"});
  CHECK(r.code == 0);
  CHECK(r.out == "birth,death,lifetime\n1,inf,inf\n2,9,7\n");

  r = run_cli({"diagram", worked.string(), "--smooth", "0", "--border", "0", "--out",
               (tmp / "d/worked.csv").string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const auto csv = read_file(tmp / "d/worked.csv");
  CHECK(std::string(csv.begin(), csv.end()) == "birth,death,lifetime\n1,inf,inf\n2,9,7\n");

  r = run_cli({"diagram", (tmp / "nope.png").string()});
  CHECK(r.code == 1);
  CHECK_FALSE(r.err.empty());

  write_file_atomic(tmp / "junk.png", std::string_view("junk"));
  CHECK(run_cli({"diagram", (tmp / "junk.png").string()}).code == 2);
}

TEST_CASE("process subcommand") {
  TempDir tmp;
  const auto blob = tmp / "blob.png";
  write_file_atomic(blob, encode_png(square_on_background(64, 16)));
  auto r = run_cli({"process", blob.string(), (tmp / "out").string(), "--smooth", "0", "--emit",
                    "mask,gray,diagram"});
  CHECK(r.code == 0);
  CHECK(r.out.find("processed") != std::string::npos);
  CHECK(r.out.find("bbox=24,40,24,40") != std::string::npos);
  const RgbImage cropped = decode_image(read_file(tmp / "out/blob.cropped.jpg"));
  CHECK(cropped.width() == 16);
  CHECK(cropped.height() == 16);
  CHECK(fs::exists(tmp / "out/blob.mask.png"));
  CHECK(fs::exists(tmp / "out/blob.gray.png"));
  CHECK(fs::exists(tmp / "out/blob.diagram.csv"));

  const auto flat = tmp / "flat.jpg";
  write_file_atomic(flat, encode_jpeg(RgbImage(30, 20, Rgb{120, 100, 90})));
  r = run_cli({"process", flat.string(), (tmp / "out").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("fallback_original") != std::string::npos);
  CHECK(read_file(tmp / "out/flat.cropped.jpg") == read_file(flat));

  // A regular file where the output directory should be.
  write_file_atomic(tmp / "blocker", std::string_view("x"));
  r = run_cli({"process", blob.string(), (tmp / "blocker/sub").string()});
  CHECK(r.code == 1);
}

TEST_CASE("batch subcommand") {
  TempDir tmp;
  write_image_dir(tmp / "in", 10);
  auto r = run_cli({"batch", (tmp / "in").string(), (tmp / "out").string(), "--jobs", "2"});
  CHECK(r.code == 0);
  CHECK(count_entries(tmp / "out/train_dir") == 9);
  CHECK(count_entries(tmp / "out/train_dir_TIP") == 9);
  CHECK(count_entries(tmp / "out/test_dir") == 1);
  CHECK(count_entries(tmp / "out/test_dir_TIP") == 1);
  CHECK(fs::exists(tmp / "out/diagnostics/manifest.json"));

  fs::create_directories(tmp / "empty");
  r = run_cli({"batch", (tmp / "empty").string(), (tmp / "out2").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("EmptyInput") != std::string::npos);

  {
    std::ofstream corrupt(tmp / "in/img_03.jpg", std::ios::binary | std::ios::trunc);
    corrupt << "broken";
  }
  r = run_cli({"batch", (tmp / "in").string(), (tmp / "out3").string(), "--strict"});
  CHECK(r.code != 0);
  r = run_cli({"batch", (tmp / "in").string(), (tmp / "out4").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("1 error") != std::string::npos);
}

TEST_CASE("split subcommand") {
  TempDir tmp;
  write_image_dir(tmp / "in", 10);
  const auto a = run_cli({"split", (tmp / "in").string(), "--seed", "7"});
  const auto b = run_cli({"split", (tmp / "in").string(), "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 11);
  CHECK(a.out.find(",test\n") != std::string::npos);
}

TEST_CASE("invalid flags exit 1 before any output is written") {
  TempDir tmp;
  write_image_dir(tmp / "in", 3);
  const std::string in = (tmp / "in").string();
  const std::string out = (tmp / "never").string();
  CHECK(run_cli({"batch", in, out, "--connectivity", "6"}).code == 1);
  CHECK(run_cli({"batch", in, out, "--smooth", "-1"}).code == 1);
  CHECK(run_cli({"batch", in, out, "--border", "wide"}).code == 1);
  CHECK(run_cli({"batch", in, out, "--ratio", "1.5"}).code == 1);
  CHECK(run_cli({"batch", in, out, "--jobs", "0"}).code == 1);
  CHECK(run_cli({"batch", in, out, "--emit", "everything"}).code == 1);
  CHECK(run_cli({"batch", in, out, "--emit", "gray"}).code == 1);
  CHECK(run_cli({"batch", in, out, "--bogus"}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({}).code == 1);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("config file values merge under command-line flags") {
  TempDir tmp;
  const auto worked = tmp / "worked.png";
  write_file_atomic(worked, encode_png(gray_from_rows({{9, 9, 9}, {1, 9, 2}, {9, 9, 9}})));
  write_file_atomic(tmp / "cfg.json", std::string_view(R"({"smooth": 0, "border": "0", "connectivity": 8})"));

  const auto from_file = run_cli({"diagram", worked.string(), "--config", (tmp / "cfg.json").string()});
  const auto direct =
      run_cli({"diagram", worked.string(), "--smooth", "0", "--border", "0", "--connectivity", "8"});
  CHECK(from_file.code == 0);
  CHECK(from_file.out == direct.out);

  const auto overridden = run_cli(
      {"diagram", worked.string(), "--config", (tmp / "cfg.json").string(), "--connectivity", "4"});
  CHECK(overridden.out == "birth,death,lifetime\n1,inf,inf\n2,9,7\n");

  write_file_atomic(tmp / "bad.json", std::string_view(R"({"smooth": "lots"})"));
  CHECK(run_cli({"diagram", worked.string(), "--config", (tmp / "bad.json").string()}).code == 1);
  write_file_atomic(tmp / "unknown.json", std::string_view(R"({"colour": 3})"));
  CHECK(run_cli({"diagram", worked.string(), "--config", (tmp / "unknown.json").string()}).code == 1);
  CHECK(run_cli({"diagram", worked.string(), "--config", (tmp / "missing.json").string()}).code == 1);
}
