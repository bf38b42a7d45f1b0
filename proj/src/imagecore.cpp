#include "topocrop/imagecore.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace topocrop {

GrayImage rgb_to_gray(const RgbImage& img) {
  GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Rgb& p = img[i];
    const std::uint32_t weighted = 299u * p.r + 587u * p.g + 114u * p.b;
    out[i] = static_cast<std::uint8_t>(std::min<std::uint32_t>((weighted + 500u) / 1000u, 255u));
  }
  return out;
}

GrayImage invert(const GrayImage& img) {
  GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) out[i] = static_cast<std::uint8_t>(255 - img[i]);
  return out;
}

GrayImage smooth(const GrayImage& img, std::size_t radius) {
  if (radius == 0) return img;
  const std::size_t width = img.width();
  const std::size_t height = img.height();
  const auto r = static_cast<std::ptrdiff_t>(radius);
  const auto clamp_col = [&](std::ptrdiff_t c) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(width) - 1));
  };
  const auto clamp_row = [&](std::ptrdiff_t c) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(height) - 1));
  };

  // The clamped window is a product of clamped row and column offsets, so
  // the sum separates into a horizontal pass followed by a vertical one.
  std::vector<std::uint32_t> horizontal(img.size());
  for (std::size_t row = 0; row < height; ++row) {
    for (std::size_t col = 0; col < width; ++col) {
      std::uint32_t sum = 0;
      for (std::ptrdiff_t d = -r; d <= r; ++d)
        sum += img.at(row, clamp_col(static_cast<std::ptrdiff_t>(col) + d));
      horizontal[row * width + col] = sum;
    }
  }

  const std::uint64_t count = static_cast<std::uint64_t>(2 * radius + 1) * (2 * radius + 1);
  GrayImage out(width, height);
  for (std::size_t row = 0; row < height; ++row) {
    for (std::size_t col = 0; col < width; ++col) {
      std::uint64_t sum = 0;
      for (std::ptrdiff_t d = -r; d <= r; ++d)
        sum += horizontal[clamp_row(static_cast<std::ptrdiff_t>(row) + d) * width + col];
      // round half up of sum / count
      out.at(row, col) = static_cast<std::uint8_t>((2 * sum + count) / (2 * count));
    }
  }
  return out;
}

GrayImage border_modify(const GrayImage& img, std::size_t band) {
  if (band == 0) return img;
  const std::uint8_t lowest = *std::min_element(img.pixels().begin(), img.pixels().end());
  GrayImage out = img;
  const std::size_t width = img.width();
  const std::size_t height = img.height();
  for (std::size_t row = 0; row < height; ++row) {
    for (std::size_t col = 0; col < width; ++col) {
      const std::size_t distance =
          std::min({row, col, height - 1 - row, width - 1 - col});
      if (distance < band) out.at(row, col) = lowest;
    }
  }
  return out;
}

std::size_t auto_border_band(std::size_t width, std::size_t height) noexcept {
  // round half up of shorter / 20 in integers
  const std::size_t shorter = std::min(width, height);
  return std::max<std::size_t>(1, (shorter * 5 + 50) / 100);
}

}  // namespace topocrop
