#pragma once

#include <cstddef>

#include "topocrop/raster.hpp"

namespace topocrop {

/// BT.601 luma, round half up: (299 R + 587 G + 114 B + 500) / 1000.
GrayImage rgb_to_gray(const RgbImage& img);

/// 255 - v per pixel; turns bright objects into sublevel minima.
GrayImage invert(const GrayImage& img);

/// Box-filter mean over the (2 radius + 1)^2 window with replicated
/// borders, rounded half up. Radius 0 is the identity.
GrayImage smooth(const GrayImage& img, std::size_t radius);

/// Sets every pixel closer than `band` to the image border to the
/// image's global minimum. Other pixels are untouched.
GrayImage border_modify(const GrayImage& img, std::size_t band);

/// max(1, round(0.05 * min(width, height))).
std::size_t auto_border_band(std::size_t width, std::size_t height) noexcept;

}  // namespace topocrop
