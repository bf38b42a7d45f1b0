#include "topocrop/cropper.hpp"

#include <algorithm>
#include <vector>

namespace topocrop {

BoundingBox bounding_box(const BinaryMask& mask) {
  const std::size_t width = mask.width();
  const std::size_t height = mask.height();
  std::vector<std::uint8_t> row(height, 0);
  std::vector<std::uint8_t> column(width, 0);
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const std::uint8_t bit = mask.at(r, c) ? 1 : 0;
      row[r] = std::max(row[r], bit);
      column[c] = std::max(column[c], bit);
    }
  }
  if (std::find(row.begin(), row.end(), 1) == row.end()) throw EmptyMask();

  BoundingBox box;
  while (!row[box.top]) ++box.top;
  box.bottom = height;
  while (!row[box.bottom - 1]) --box.bottom;
  while (!column[box.left]) ++box.left;
  box.right = width;
  while (!column[box.right - 1]) --box.right;
  return box;
}

BoundingBox expand(const BoundingBox& box, std::size_t margin, std::size_t width,
                   std::size_t height) noexcept {
  return {
      box.top - std::min(box.top, margin),
      std::min(height, box.bottom + margin),
      box.left - std::min(box.left, margin),
      std::min(width, box.right + margin),
  };
}

}  // namespace topocrop
