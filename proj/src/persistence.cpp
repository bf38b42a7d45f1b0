#include "topocrop/persistence.hpp"

#include "topocrop/sweep.hpp"

namespace topocrop {

std::vector<int> PersistenceDiagram::lifetimes() const {
  std::vector<int> out;
  out.reserve(finite_pairs.size());
  for (const auto& pair : finite_pairs) out.push_back(pair.lifetime());
  return out;
}

namespace {

struct PairCollector {
  const ElderUnionFind& uf;
  PersistenceDiagram& diagram;

  void on_birth(std::size_t, int) {}
  void on_join(std::size_t, std::size_t) {}
  void on_death(std::size_t dying, std::size_t, int level) {
    const int birth = uf.birth(dying);
    if (level > birth) diagram.finite_pairs.push_back({birth, level, dying});
  }
};

}  // namespace

PersistenceDiagram compute_persistence(const GrayImage& img, Connectivity conn) {
  PersistenceDiagram diagram;
  ElderUnionFind uf(img.size());
  PairCollector collector{uf, diagram};
  detail::sweep(img, conn, uf, collector);
  for (std::size_t i = 0; i < uf.size(); ++i) {
    if (uf.is_root(i)) diagram.essential.push_back({uf.birth(i), PersistencePair::kInfinite, i});
  }
  return diagram;
}

}  // namespace topocrop
