#pragma once

// Test-only helpers. Nothing here calls into the persistence or mask code,
// so the oracles stay independent of what they check.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "topocrop/persistence.hpp"
#include "topocrop/raster.hpp"

namespace topocrop::testing {

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("topocrop-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline GrayImage gray_from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t height = rows.size();
  const std::size_t width = rows.front().size();
  std::vector<std::uint8_t> px;
  for (const auto& row : rows)
    for (int v : row) px.push_back(static_cast<std::uint8_t>(v));
  return GrayImage(width, height, std::move(px));
}

inline RgbImage rgb_from_gray(const GrayImage& g) {
  RgbImage out(g.width(), g.height());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = {g[i], g[i], g[i]};
  return out;
}

inline GrayImage random_gray(std::mt19937_64& rng, std::size_t width, std::size_t height,
                             int lo = 0, int hi = 255) {
  std::uniform_int_distribution<int> dist(lo, hi);
  GrayImage img(width, height);
  for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(dist(rng));
  return img;
}

/// Number of connected components of a predicate over the grid, by
/// depth-first flood fill.
template <typename Pred>
std::size_t count_components(std::size_t width, std::size_t height, Connectivity conn, Pred in_set) {
  std::vector<char> seen(width * height, 0);
  std::size_t count = 0;
  std::vector<std::pair<long, long>> stack;
  for (std::size_t start = 0; start < width * height; ++start) {
    if (seen[start] || !in_set(start)) continue;
    ++count;
    seen[start] = 1;
    stack.push_back({static_cast<long>(start / width), static_cast<long>(start % width)});
    while (!stack.empty()) {
      auto [r, c] = stack.back();
      stack.pop_back();
      for (long dr = -1; dr <= 1; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          if (conn == Connectivity::four && dr != 0 && dc != 0) continue;
          const long nr = r + dr;
          const long nc = c + dc;
          if (nr < 0 || nc < 0 || nr >= static_cast<long>(height) || nc >= static_cast<long>(width))
            continue;
          const auto q = static_cast<std::size_t>(nr) * width + static_cast<std::size_t>(nc);
          if (seen[q] || !in_set(q)) continue;
          seen[q] = 1;
          stack.push_back({nr, nc});
        }
      }
    }
  }
  return count;
}

inline std::size_t count_mask_components(const BinaryMask& mask, Connectivity conn) {
  return count_components(mask.width(), mask.height(), conn,
                          [&](std::size_t i) { return mask[i] != 0; });
}

/// Diagram as a sorted multiset of (birth, death); creators ignored.
inline std::vector<std::pair<int, int>> pair_multiset(const PersistenceDiagram& d) {
  std::vector<std::pair<int, int>> out;
  for (const auto& p : d.finite_pairs) out.emplace_back(p.birth, p.death);
  for (const auto& p : d.essential) out.emplace_back(p.birth, p.death);
  std::sort(out.begin(), out.end());
  return out;
}

/// Level-separated blob fixture: `count` dark square blocks on a bright
/// background, the outer ring forced to the blob level like a border band.
struct BlobFixture {
  GrayImage image;
  BinaryMask expected;
};

inline BlobFixture make_blobs(std::size_t count, std::size_t size = 64, std::size_t block = 6,
                              std::uint8_t dark = 10, std::uint8_t bright = 200,
                              std::size_t band = 2) {
  GrayImage img(size, size, bright);
  BinaryMask expected(size, size, 0);
  const std::size_t step = block + 4;
  const std::size_t per_row = (size - 2 * band - 4) / step;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t top = band + 3 + (k / per_row) * step;
    const std::size_t left = band + 3 + (k % per_row) * step;
    for (std::size_t r = top; r < top + block; ++r)
      for (std::size_t c = left; c < left + block; ++c) {
        img.at(r, c) = dark;
        expected.at(r, c) = 1;
      }
  }
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c)
      if (std::min({r, c, size - 1 - r, size - 1 - c}) < band) img.at(r, c) = dark;
  return {img, expected};
}

}  // namespace topocrop::testing
