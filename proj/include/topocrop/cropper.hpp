#pragma once

#include <cstddef>

#include "topocrop/errors.hpp"
#include "topocrop/raster.hpp"

namespace topocrop {

/// Half-open box: rows [top, bottom), columns [left, right).
struct BoundingBox {
  std::size_t top = 0;
  std::size_t bottom = 0;
  std::size_t left = 0;
  std::size_t right = 0;

  std::size_t height() const noexcept { return bottom - top; }
  std::size_t width() const noexcept { return right - left; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Minimal box around all 1s, found from the per-row and per-column
/// maxima. Throws EmptyMask if the mask is all zero.
BoundingBox bounding_box(const BinaryMask& mask);

/// Grows the box by `margin` on every side, clamped to width x height.
BoundingBox expand(const BoundingBox& box, std::size_t margin, std::size_t width,
                   std::size_t height) noexcept;

template <typename Pixel, typename Tag>
Raster<Pixel, Tag> crop(const Raster<Pixel, Tag>& img, const BoundingBox& box) {
  if (box.top >= box.bottom || box.left >= box.right || box.bottom > img.height() ||
      box.right > img.width()) {
    throw BoxOutOfBounds("BoxOutOfBounds: box [" + std::to_string(box.top) + ":" +
                         std::to_string(box.bottom) + ", " + std::to_string(box.left) + ":" +
                         std::to_string(box.right) + "] does not fit " +
                         std::to_string(img.width()) + "x" + std::to_string(img.height()));
  }
  Raster<Pixel, Tag> out(box.width(), box.height());
  for (std::size_t r = 0; r < box.height(); ++r)
    for (std::size_t c = 0; c < box.width(); ++c) out.at(r, c) = img.at(box.top + r, box.left + c);
  return out;
}

}  // namespace topocrop
