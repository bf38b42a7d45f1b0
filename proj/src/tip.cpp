#include "topocrop/tip.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include "topocrop/errors.hpp"
#include "topocrop/sweep.hpp"

namespace topocrop {

Threshold select_threshold(std::span<const int> lifetimes) {
  if (lifetimes.empty()) throw EmptyDiagram();
  if (lifetimes.size() == 1) return {0.0};

  std::vector<int> sorted(lifetimes.begin(), lifetimes.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  std::size_t best = 0;
  long long best_gap = -1;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const long long gap = static_cast<long long>(sorted[i]) - sorted[i + 1];
    if (gap > best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  if (best_gap == 0) return {0.0};
  return {(static_cast<double>(sorted[best]) + static_cast<double>(sorted[best + 1])) / 2.0};
}

Threshold select_threshold(const PersistenceDiagram& diagram) {
  const auto lifetimes = diagram.lifetimes();
  return select_threshold(std::span<const int>(lifetimes));
}

namespace {

struct MemberTracker {
  const ElderUnionFind& uf;
  Threshold threshold;
  BinaryMask& mask;
  std::vector<std::vector<std::size_t>> members;
  bool any = false;

  void on_birth(std::size_t pixel, int) { members[pixel].push_back(pixel); }

  void on_join(std::size_t pixel, std::size_t root) { members[root].push_back(pixel); }

  void on_death(std::size_t dying, std::size_t survivor, int level) {
    auto& lost = members[dying];
    if (static_cast<double>(level - uf.birth(dying)) > threshold.value) {
      for (std::size_t p : lost) mask[p] = 1;
      any = any || !lost.empty();
    }
    auto& kept = members[survivor];
    if (lost.size() > kept.size()) lost.swap(kept);
    kept.insert(kept.end(), lost.begin(), lost.end());
    std::vector<std::size_t>().swap(lost);
  }
};

}  // namespace

BinaryMask generate_mask(const GrayImage& img, Connectivity conn, Threshold threshold) {
  BinaryMask mask(img.width(), img.height(), 0);
  ElderUnionFind uf(img.size());
  MemberTracker tracker{uf, threshold, mask, std::vector<std::vector<std::size_t>>(img.size())};
  detail::sweep(img, conn, uf, tracker);
  if (!tracker.any) throw EmptyMask();
  return mask;
}

}  // namespace topocrop
