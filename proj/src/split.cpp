#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "topocrop/pipeline.hpp"

namespace topocrop {

namespace {

// Uniform draw from [0, bound) without modulo bias. Unlike
// std::uniform_int_distribution the algorithm is fixed, so the sequence
// is the same with every standard library.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t reject_below = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= reject_below) return x % bound;
  }
}

}  // namespace

std::pair<std::vector<std::string>, std::vector<std::string>> split_dataset(
    std::vector<std::string> filenames, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("split ratio must be in (0, 1)");
  std::sort(filenames.begin(), filenames.end());
  if (std::adjacent_find(filenames.begin(), filenames.end()) != filenames.end())
    throw std::invalid_argument("split_dataset: duplicate filename");

  std::mt19937_64 rng(seed);
  for (std::size_t i = filenames.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded(rng, i));
    std::swap(filenames[i - 1], filenames[j]);
  }

  // The epsilon absorbs products such as 0.29 * 100 = 28.999999999999996.
  const auto train_count = std::min(
      filenames.size(),
      static_cast<std::size_t>(std::floor(ratio * static_cast<double>(filenames.size()) + 1e-9)));
  std::vector<std::string> test(filenames.begin() + static_cast<std::ptrdiff_t>(train_count),
                                filenames.end());
  filenames.resize(train_count);
  return {std::move(filenames), std::move(test)};
}

}  // namespace topocrop
