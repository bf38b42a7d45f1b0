#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace topocrop {

/// Disjoint sets over pixel indices where every root remembers when its
/// component was born. Unions never pick a root by rank: the caller
/// links the younger root under the elder one, so the surviving root is
/// always the component that persists.
class ElderUnionFind {
 public:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  explicit ElderUnionFind(std::size_t size)
      : parent_(size, kAbsent), birth_(size, 0), stamp_(size, 0) {}

  std::size_t size() const noexcept { return parent_.size(); }

  bool contains(std::size_t x) const noexcept { return parent_[x] != kAbsent; }

  void make_set(std::size_t x, int birth, std::size_t stamp) noexcept {
    parent_[x] = x;
    birth_[x] = birth;
    stamp_[x] = stamp;
  }

  /// Root of x's set; x must have been added. Path halving.
  std::size_t find(std::size_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool is_root(std::size_t x) const noexcept { return parent_[x] == x; }

  int birth(std::size_t root) const noexcept { return birth_[root]; }
  std::size_t stamp(std::size_t root) const noexcept { return stamp_[root]; }

  /// Elder rule ordering: earlier birth wins, equal births fall back to
  /// the earlier creation stamp.
  bool older(std::size_t root_a, std::size_t root_b) const noexcept {
    if (birth_[root_a] != birth_[root_b]) return birth_[root_a] < birth_[root_b];
    return stamp_[root_a] < stamp_[root_b];
  }

  /// Hangs `younger` under `elder`. Both must be roots.
  void link(std::size_t younger, std::size_t elder) noexcept { parent_[younger] = elder; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> birth_;
  std::vector<std::size_t> stamp_;
};

}  // namespace topocrop
