#include <algorithm>
#include <string>

#include "topocrop/persistence.hpp"

namespace topocrop {

std::string diagram_to_csv(const PersistenceDiagram& diagram) {
  std::vector<PersistencePair> rows = diagram.essential;
  rows.insert(rows.end(), diagram.finite_pairs.begin(), diagram.finite_pairs.end());
  // Essential pairs have infinite lifetime and sort first.
  std::stable_sort(rows.begin(), rows.end(), [](const PersistencePair& a, const PersistencePair& b) {
    if (a.essential() != b.essential()) return a.essential();
    if (!a.essential() && a.lifetime() != b.lifetime()) return a.lifetime() > b.lifetime();
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });

  std::string out = "birth,death,lifetime\n";
  for (const auto& pair : rows) {
    out += std::to_string(pair.birth);
    if (pair.essential()) {
      out += ",inf,inf\n";
    } else {
      out += ',' + std::to_string(pair.death) + ',' + std::to_string(pair.lifetime()) + '\n';
    }
  }
  return out;
}

}  // namespace topocrop
