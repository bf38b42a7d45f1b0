#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace topocrop {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major 2D pixel grid. The tag keeps gray images and binary masks
/// from being interchangeable even though both store bytes.
template <typename Pixel, typename Tag>
class Raster {
 public:
  using pixel_type = Pixel;

  Raster() = default;

  Raster(std::size_t width, std::size_t height, Pixel fill = Pixel{})
      : width_(width), height_(height), pixels_(checked_count(width, height), fill) {}

  Raster(std::size_t width, std::size_t height, std::vector<Pixel> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (pixels_.size() != checked_count(width, height)) {
      throw std::invalid_argument("pixel count " + std::to_string(pixels_.size()) +
                                  " does not match " + std::to_string(width) + "x" +
                                  std::to_string(height));
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  Pixel& at(std::size_t row, std::size_t col) { return pixels_[row * width_ + col]; }
  const Pixel& at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }

  Pixel& operator[](std::size_t index) { return pixels_[index]; }
  const Pixel& operator[](std::size_t index) const { return pixels_[index]; }

  std::span<Pixel> pixels() noexcept { return pixels_; }
  std::span<const Pixel> pixels() const noexcept { return pixels_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  static std::size_t checked_count(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) {
      throw std::invalid_argument("image dimensions must be at least 1x1");
    }
    return width * height;
  }

  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<Pixel> pixels_;
};

struct RgbTag;
struct GrayTag;
struct MaskTag;

using RgbImage = Raster<Rgb, RgbTag>;
using GrayImage = Raster<std::uint8_t, GrayTag>;
/// 1 marks object pixels, 0 marks background.
using BinaryMask = Raster<std::uint8_t, MaskTag>;

}  // namespace topocrop
