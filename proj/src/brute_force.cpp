#include <algorithm>
#include <deque>
#include <limits>
#include <vector>

#include "topocrop/persistence.hpp"

namespace topocrop {

namespace {

struct Identity {
  int birth;
  // smallest row-major pixel index of the component when it appeared
  std::size_t key;
};

constexpr int kUnlabeled = -1;

// Labels the 1-pixels of I_t = {p : img[p] <= t} by breadth-first flood fill.
int label_level(const GrayImage& img, int level, Connectivity conn, std::vector<int>& labels) {
  static constexpr int kFour[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  static constexpr int kEight[8][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1},
                                       {-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  const auto* offsets = conn == Connectivity::four ? kFour : kEight;
  const int offset_count = conn == Connectivity::four ? 4 : 8;
  const auto width = static_cast<long>(img.width());
  const auto height = static_cast<long>(img.height());

  std::fill(labels.begin(), labels.end(), kUnlabeled);
  int next = 0;
  std::deque<std::size_t> queue;
  for (std::size_t seed = 0; seed < img.size(); ++seed) {
    if (img[seed] > level || labels[seed] != kUnlabeled) continue;
    labels[seed] = next;
    queue.push_back(seed);
    while (!queue.empty()) {
      const std::size_t p = queue.front();
      queue.pop_front();
      const long row = static_cast<long>(p) / width;
      const long col = static_cast<long>(p) % width;
      for (int k = 0; k < offset_count; ++k) {
        const long r = row + offsets[k][0];
        const long c = col + offsets[k][1];
        if (r < 0 || r >= height || c < 0 || c >= width) continue;
        const auto q = static_cast<std::size_t>(r * width + c);
        if (img[q] > level || labels[q] != kUnlabeled) continue;
        labels[q] = next;
        queue.push_back(q);
      }
    }
    ++next;
  }
  return next;
}

}  // namespace

PersistenceDiagram brute_force_persistence(const GrayImage& img, Connectivity conn) {
  std::vector<int> levels(img.pixels().begin(), img.pixels().end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  PersistenceDiagram diagram;
  std::vector<int> prev_labels(img.size(), kUnlabeled);
  std::vector<Identity> prev_identity;
  std::vector<int> labels(img.size(), kUnlabeled);

  for (int level : levels) {
    const int count = label_level(img, level, conn, labels);

    // Previous-level components contained in each current component.
    std::vector<std::vector<int>> contained(count);
    std::vector<std::size_t> min_index(count, std::numeric_limits<std::size_t>::max());
    for (std::size_t p = 0; p < img.size(); ++p) {
      const int current = labels[p];
      if (current == kUnlabeled) continue;
      min_index[current] = std::min(min_index[current], p);
      const int previous = prev_labels[p];
      if (previous == kUnlabeled) continue;
      auto& list = contained[current];
      if (std::find(list.begin(), list.end(), previous) == list.end()) list.push_back(previous);
    }

    std::vector<Identity> identity(count);
    for (int current = 0; current < count; ++current) {
      const auto& list = contained[current];
      if (list.empty()) {
        identity[current] = {level, min_index[current]};
        continue;
      }
      const auto elder_of = [&](int a, int b) {
        const Identity& x = prev_identity[a];
        const Identity& y = prev_identity[b];
        return x.birth != y.birth ? x.birth < y.birth : x.key < y.key;
      };
      const int elder = *std::min_element(list.begin(), list.end(), elder_of);
      for (int previous : list) {
        if (previous == elder) continue;
        const Identity& dying = prev_identity[previous];
        if (level > dying.birth) diagram.finite_pairs.push_back({dying.birth, level, dying.key});
      }
      identity[current] = prev_identity[elder];
    }

    prev_labels.swap(labels);
    prev_identity = std::move(identity);
  }

  for (const Identity& survivor : prev_identity)
    diagram.essential.push_back({survivor.birth, PersistencePair::kInfinite, survivor.key});
  return diagram;
}

}  // namespace topocrop
