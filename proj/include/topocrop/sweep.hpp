#pragma once

// Sublevel sweep shared by the persistence diagram and mask generation.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "topocrop/persistence.hpp"
#include "topocrop/raster.hpp"
#include "topocrop/union_find.hpp"

namespace topocrop::detail {

/// Pixel indices in ascending (intensity, row-major index) order.
/// Counting sort; stable, so row-major order holds within a level.
inline std::vector<std::size_t> sweep_order(const GrayImage& img) {
  std::array<std::size_t, 257> offsets{};
  for (std::uint8_t v : img.pixels()) ++offsets[v + 1];
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  std::vector<std::size_t> order(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) order[offsets[img[i]]++] = i;
  return order;
}

/// Visits the already-swept neighbours of `index`.
template <typename Fn>
void for_each_neighbor(std::size_t index, std::size_t width, std::size_t height,
                       Connectivity conn, Fn&& fn) {
  const std::size_t row = index / width;
  const std::size_t col = index % width;
  const bool up = row > 0;
  const bool down = row + 1 < height;
  const bool left = col > 0;
  const bool right = col + 1 < width;
  if (up) fn(index - width);
  if (left) fn(index - 1);
  if (right) fn(index + 1);
  if (down) fn(index + width);
  if (conn == Connectivity::eight) {
    if (up && left) fn(index - width - 1);
    if (up && right) fn(index - width + 1);
    if (down && left) fn(index + width - 1);
    if (down && right) fn(index + width + 1);
  }
}

/// Runs the elder-rule sweep. For each pixel the distinct roots of its
/// already-added neighbours are collected; the pixel joins the eldest of
/// them and every other root dies against it at the pixel's level. A
/// pixel with no added neighbour starts a new component.
///
/// `uf` must be freshly constructed with img.size() elements. Roots are
/// always the creator pixel of their component.
///
/// Visitor interface:
///   on_birth(pixel, level)
///   on_join(pixel, root)
///   on_death(dying_root, surviving_root, level)   // before the link
template <typename Visitor>
void sweep(const GrayImage& img, Connectivity conn, ElderUnionFind& uf, Visitor& visitor) {
  const auto order = sweep_order(img);
  std::vector<std::size_t> roots;
  roots.reserve(8);

  for (std::size_t position = 0; position < order.size(); ++position) {
    const std::size_t pixel = order[position];
    const int level = img[pixel];

    roots.clear();
    for_each_neighbor(pixel, img.width(), img.height(), conn, [&](std::size_t n) {
      if (!uf.contains(n)) return;
      const std::size_t root = uf.find(n);
      for (std::size_t r : roots)
        if (r == root) return;
      roots.push_back(root);
    });

    if (roots.empty()) {
      uf.make_set(pixel, level, position);
      visitor.on_birth(pixel, level);
      continue;
    }

    std::size_t eldest = roots.front();
    for (std::size_t r : roots)
      if (uf.older(r, eldest)) eldest = r;

    uf.make_set(pixel, level, position);
    uf.link(pixel, eldest);
    visitor.on_join(pixel, eldest);

    for (std::size_t r : roots) {
      if (r == eldest) continue;
      visitor.on_death(r, eldest, level);
      uf.link(r, eldest);
    }
  }
}

}  // namespace topocrop::detail
