#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "topocrop/raster.hpp"

namespace topocrop {

enum class Connectivity { four, eight };

/// A 0-dimensional feature of the sublevel filtration. Levels are plain
/// ints so diagrams can be shifted or scaled outside the 8-bit range.
struct PersistencePair {
  static constexpr int kInfinite = std::numeric_limits<int>::max();

  int birth = 0;
  int death = kInfinite;
  /// Row-major index of the component's first swept pixel.
  std::size_t creator = 0;

  bool essential() const noexcept { return death == kInfinite; }
  /// death - birth; only meaningful for finite pairs.
  int lifetime() const noexcept { return death - birth; }

  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

struct PersistenceDiagram {
  std::vector<PersistencePair> finite_pairs;
  std::vector<PersistencePair> essential;

  std::vector<int> lifetimes() const;

  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

/// 0-dimensional persistence of the sublevel filtration of `img`, where a
/// simplex enters at the maximum intensity of its vertices. Pixels are
/// swept in ascending (intensity, row-major index) order and components
/// merge by the elder rule. Zero-lifetime pairs are dropped.
PersistenceDiagram compute_persistence(const GrayImage& img,
                                       Connectivity conn = Connectivity::four);

/// Reference implementation: labels every threshold image I_t by flood
/// fill and tracks components across consecutive levels by containment.
/// Quadratic-ish; meant for small test images only.
PersistenceDiagram brute_force_persistence(const GrayImage& img,
                                           Connectivity conn = Connectivity::four);

/// `birth,death,lifetime` CSV, essential pairs as `inf`, rows ordered by
/// descending lifetime then ascending birth.
std::string diagram_to_csv(const PersistenceDiagram& diagram);

}  // namespace topocrop
