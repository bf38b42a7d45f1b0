#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/fixtures.hpp"
#include "topocrop/errors.hpp"
#include "topocrop/imagecore.hpp"
#include "topocrop/tip.hpp"

using namespace topocrop;
using topocrop::testing::count_mask_components;
using topocrop::testing::gray_from_rows;
using topocrop::testing::make_blobs;
using topocrop::testing::random_gray;

namespace {

Threshold threshold_of(std::vector<int> lifetimes) {
  return select_threshold(std::span<const int>(lifetimes));
}

BinaryMask mask_or_empty(const GrayImage& img, Connectivity conn, Threshold t) {
  try {
    return generate_mask(img, conn, t);
  } catch (const EmptyMask&) {
    return BinaryMask(img.width(), img.height(), 0);
  }
}

}  // namespace

TEST_CASE("threshold sits in the middle of the widest lifetime gap") {
  CHECK(threshold_of({10, 8, 1}).value == 4.5);
  CHECK(threshold_of({1, 10, 8}).value == 4.5);
  CHECK(threshold_of({7}).value == 0.0);
  CHECK(threshold_of({9, 6, 3}).value == 7.5);
  CHECK(threshold_of({5, 5, 5}).value == 0.0);
  CHECK(threshold_of({4, 4, 1, 1}).value == 2.5);
  CHECK_THROWS_AS(threshold_of({}), EmptyDiagram);
}

TEST_CASE("threshold ignores essential pairs") {
  PersistenceDiagram d;
  d.essential = {{0, PersistencePair::kInfinite, 0}};
  d.finite_pairs = {{10, 20, 1}, {10, 18, 2}, {10, 11, 3}};
  CHECK(select_threshold(d).value == 4.5);
  d.finite_pairs.clear();
  CHECK_THROWS_AS(select_threshold(d), EmptyDiagram);
}

TEST_CASE("threshold depends only on the lifetime multiset and scales linearly") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> lifetimes(1 + rng() % 12);
    for (int& l : lifetimes) l = 1 + static_cast<int>(rng() % 60);
    const Threshold base = threshold_of(lifetimes);
    std::shuffle(lifetimes.begin(), lifetimes.end(), rng);
    CHECK(threshold_of(lifetimes) == base);

    const int factor = 1 + static_cast<int>(rng() % 5);
    std::vector<int> scaled = lifetimes;
    for (int& l : scaled) l *= factor;
    const Threshold t = threshold_of(scaled);
    CHECK(t.value == base.value * factor);
    for (std::size_t i = 0; i < lifetimes.size(); ++i)
      CHECK((lifetimes[i] > base.value) == (scaled[i] > t.value));
  }
}

TEST_CASE("mask of the worked fixture marks only the dying value-2 pixel") {
  const GrayImage img = gray_from_rows({{9, 9, 9}, {1, 9, 2}, {9, 9, 9}});
  const BinaryMask mask = generate_mask(img, Connectivity::four, Threshold{0.0});
  BinaryMask expected(3, 3, 0);
  expected.at(1, 2) = 1;
  CHECK(mask == expected);
}

TEST_CASE("constant image has no finite pairs to threshold") {
  const GrayImage img(6, 6, 77);
  CHECK_THROWS_AS(select_threshold(compute_persistence(img)), EmptyDiagram);
  CHECK_THROWS_AS(generate_mask(img, Connectivity::four, Threshold{0.0}), EmptyMask);
}

TEST_CASE("two dark blocks on a bright background") {
  GrayImage img(32, 32, 200);
  BinaryMask expected(32, 32, 0);
  for (auto [top, left] : {std::pair{6, 6}, std::pair{18, 20}}) {
    for (int r = top; r < top + 4; ++r)
      for (int c = left; c < left + 4; ++c) {
        img.at(r, c) = 10;
        expected.at(r, c) = 1;
      }
  }
  img = border_modify(img, 2);
  for (auto conn : {Connectivity::four, Connectivity::eight}) {
    const auto diagram = compute_persistence(img, conn);
    REQUIRE(diagram.finite_pairs.size() == 2);
    for (const auto& p : diagram.finite_pairs) CHECK(p.lifetime() == 190);
    const Threshold t = select_threshold(diagram);
    CHECK(t.value == 0.0);
    CHECK(generate_mask(img, conn, t) == expected);
  }
}

TEST_CASE("threshold strictly separates selected and rejected lifetimes") {
  // Lifetimes 190 (block) and 50 (faint block): gap midpoint 120 keeps the
  // dark block only.
  GrayImage img(24, 24, 200);
  for (int r = 5; r < 9; ++r)
    for (int c = 5; c < 9; ++c) img.at(r, c) = 10;
  for (int r = 14; r < 18; ++r)
    for (int c = 14; c < 18; ++c) img.at(r, c) = 150;
  img = border_modify(img, 1);
  const auto d = compute_persistence(img);
  const Threshold t = select_threshold(d);
  CHECK(t.value == 120.0);
  const BinaryMask mask = generate_mask(img, Connectivity::four, t);
  CHECK(count_mask_components(mask, Connectivity::four) == 1);
  CHECK(mask.at(6, 6) == 1);
  CHECK(mask.at(15, 15) == 0);
  // A cut exactly at a lifetime excludes it.
  const BinaryMask at_190 = mask_or_empty(img, Connectivity::four, Threshold{190.0});
  CHECK(std::count(at_190.pixels().begin(), at_190.pixels().end(), 1) == 0);
}

TEST_CASE("mask component count matches selected pairs on level-separated fixtures") {
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto fixture = make_blobs(k);
    for (auto conn : {Connectivity::four, Connectivity::eight}) {
      const auto d = compute_persistence(fixture.image, conn);
      const Threshold t = select_threshold(d);
      const BinaryMask mask = generate_mask(fixture.image, conn, t);
      std::size_t selected = 0;
      for (const auto& p : d.finite_pairs) selected += p.lifetime() > t.value;
      CHECK(count_mask_components(mask, conn) == selected);
      CHECK(selected == k);
      CHECK(mask == fixture.expected);
      for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) CHECK(fixture.image[i] < 200);
    }
  }
}

TEST_CASE("raising the threshold never adds pixels") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    const GrayImage img = random_gray(rng, 4 + rng() % 14, 4 + rng() % 14);
    for (auto conn : {Connectivity::four, Connectivity::eight}) {
      const auto d = compute_persistence(img, conn);
      int max_death = 0;
      for (const auto& p : d.finite_pairs) max_death = std::max(max_death, p.death);
      const double low = static_cast<double>(rng() % 120);
      const double high = low + static_cast<double>(rng() % 120) + 0.5;
      const BinaryMask a = mask_or_empty(img, conn, Threshold{low});
      const BinaryMask b = mask_or_empty(img, conn, Threshold{high});
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(b[i] <= a[i]);
        // Members never exceed the level at which they were marked.
        if (a[i]) CHECK(img[i] <= max_death);
      }
    }
  }
}
