#pragma once

#include <span>

#include "topocrop/persistence.hpp"
#include "topocrop/raster.hpp"

namespace topocrop {

/// Lifetime cut-off. Always a half-integer average of integer lifetimes,
/// hence exactly representable.
struct Threshold {
  double value = 0.0;

  friend bool operator==(const Threshold&, const Threshold&) = default;
};

/// Sorts lifetimes in decreasing order and returns the midpoint of the
/// largest consecutive gap, the earliest gap winning ties. One lifetime,
/// or all gaps zero, gives 0. Throws EmptyDiagram on an empty list.
Threshold select_threshold(std::span<const int> lifetimes);

/// Same rule over the diagram's finite pairs; essential pairs are ignored.
Threshold select_threshold(const PersistenceDiagram& diagram);

/// Re-runs the sweep tracking component members. Whenever a component
/// dies with lifetime strictly above the threshold, the pixels it owns
/// at that moment are marked 1. Essential components are never marked.
/// Throws EmptyMask when nothing is marked.
BinaryMask generate_mask(const GrayImage& img, Connectivity conn, Threshold threshold);

}  // namespace topocrop
