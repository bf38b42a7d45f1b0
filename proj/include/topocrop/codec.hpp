#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topocrop/raster.hpp"

namespace topocrop {

enum class ImageFormat { png, jpeg, unknown };

/// Sniffs the stream's magic bytes.
ImageFormat detect_format(std::span<const std::uint8_t> bytes) noexcept;

/// Decodes a PNG or JPEG stream into 8-bit RGB. Grayscale, palette and
/// 16-bit PNGs are expanded; alpha is dropped by compositing.
/// Throws DecodeError on corrupt, truncated or unsupported input.
RgbImage decode_image(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_png(const RgbImage& img);
std::vector<std::uint8_t> encode_png(const GrayImage& img);
/// 0 -> 0, 1 -> 255, 8-bit grayscale.
std::vector<std::uint8_t> encode_png(const BinaryMask& mask);

inline constexpr int kDefaultJpegQuality = 90;
std::vector<std::uint8_t> encode_jpeg(const RgbImage& img, int quality = kDefaultJpegQuality);

}  // namespace topocrop
