#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "genreason/genreason.hpp"
#include "support/oracle.hpp"

namespace fixtures {

using namespace genreason;

// Worlds over (rain, wet): m1=(0,0) m2=(0,1) m3=(1,0) m4=(1,1), rain at bit 0.
inline World rain_wet(bool rain, bool wet) {
  World w(2);
  w.set(0, rain);
  w.set(1, wet);
  return w;
}

inline Dataset rain_wet_dataset(std::uint64_t c1, std::uint64_t c2, std::uint64_t c3, std::uint64_t c4) {
  std::vector<DatasetEntry> entries;
  const std::pair<World, std::uint64_t> rows[] = {
      {rain_wet(false, false), c1}, {rain_wet(false, true), c2}, {rain_wet(true, false), c3}, {rain_wet(true, true), c4}};
  for (const auto& [w, c] : rows) {
    if (c > 0) entries.push_back({w, c});
  }
  return Dataset(AtomUniverse({"rain", "wet"}), std::move(entries));
}

// Data d1..d10 supporting m1 x4, m2 x2, m3 x1, m4 x3.
inline Dataset table1() { return rain_wet_dataset(4, 2, 1, 3); }

// p(M) = (0.5, 0.2, 0, 0.3).
inline Dataset table2() { return rain_wet_dataset(5, 2, 0, 3); }

inline Formula parse(const std::string& text, const Dataset& ds) {
  AtomUniverse u = ds.universe();
  return parse_formula(text, u);
}

inline AtomUniverse oracle_universe(int atoms) {
  std::vector<std::string> names;
  for (int i = 0; i < atoms; ++i) names.push_back(oracle::atom_name(i));
  return AtomUniverse(names);
}

inline Dataset to_dataset(const std::vector<oracle::Datum>& data, int atoms) {
  std::vector<DatasetEntry> entries;
  for (const auto& d : data) entries.push_back({World::from_index(d.world, static_cast<std::size_t>(atoms)), d.count});
  return Dataset(oracle_universe(atoms), std::move(entries));
}

inline Formula to_formula(const oracle::Expr& e, std::mt19937_64& rng, AtomUniverse& u) {
  return parse_formula(oracle::render(e, rng), u);
}

struct RandomInstance {
  int atoms;
  std::vector<oracle::Datum> data;
  oracle::ExprPtr alpha;
  std::vector<oracle::ExprPtr> delta;
};

// At most `max_atoms` atoms, `max_entries` weighted entries, `max_delta`
// conditioning formulas.
inline RandomInstance random_instance(std::mt19937_64& rng, int max_atoms = 10, int max_entries = 50,
                                      int max_delta = 4) {
  RandomInstance r;
  r.atoms = std::uniform_int_distribution<int>(1, max_atoms)(rng);
  const int entries = std::uniform_int_distribution<int>(1, max_entries)(rng);
  // Small universes or few distinct worlds make possible-model effects common.
  const std::uint64_t span = std::uint64_t{1} << r.atoms;
  const std::uint64_t distinct = std::uniform_int_distribution<std::uint64_t>(1, span)(rng);
  for (int i = 0; i < entries; ++i) {
    r.data.push_back({std::uniform_int_distribution<std::uint64_t>(0, distinct - 1)(rng),
                      std::uniform_int_distribution<std::uint64_t>(1, 5)(rng)});
  }
  r.alpha = oracle::random_expr(rng, r.atoms, 3);
  const int nd = std::uniform_int_distribution<int>(0, max_delta)(rng);
  for (int i = 0; i < nd; ++i) r.delta.push_back(oracle::random_expr(rng, r.atoms, 2));
  return r;
}

// 1-based pixel positions (as in the worked examples) to a bit vector.
inline BitVector pixels_from(std::initializer_list<int> one_based, std::size_t width = 25) {
  BitVector v(width);
  for (int j : one_based) v.set(static_cast<std::size_t>(j - 1));
  return v;
}

inline BitVector pixel_range(std::vector<std::pair<int, int>> ranges, std::size_t width = 25) {
  BitVector v(width);
  for (auto [lo, hi] : ranges) {
    for (int j = lo; j <= hi; ++j) v.set(static_cast<std::size_t>(j - 1));
  }
  return v;
}

// Two-image toy example: training "2" and "7" plus the test image.
inline mnist::BinarizedItem toy_train_two() {
  return {pixel_range({{1, 1}, {4, 8}, {10, 11}, {15, 16}, {18, 22}, {25, 25}}), 2};
}
inline mnist::BinarizedItem toy_train_seven() {
  return {pixel_range({{1, 1}, {5, 8}, {10, 13}, {15, 17}, {19, 22}, {24, 25}}), 7};
}
inline BitVector toy_test() { return pixel_range({{1, 1}, {4, 8}, {10, 12}, {14, 16}, {18, 21}, {25, 25}}); }

// Five-image toy: four "2"s at Hamming distance 2 from the test image and one
// "7" at distance 1.
struct FiveImageToy {
  std::vector<mnist::BinarizedItem> train;
  BitVector test;
};

inline FiveImageToy five_image_toy() {
  FiveImageToy t;
  t.test = toy_test();
  auto flipped = [&](std::initializer_list<int> positions) {
    BitVector v = t.test;
    for (int j : positions) v.set(static_cast<std::size_t>(j - 1), !v.test(static_cast<std::size_t>(j - 1)));
    return v;
  };
  t.train.push_back({flipped({2, 3}), 2});
  t.train.push_back({flipped({9, 13}), 2});
  t.train.push_back({flipped({17, 22}), 2});
  t.train.push_back({flipped({23, 24}), 2});
  t.train.push_back({flipped({14}), 7});
  return t;
}

}  // namespace fixtures
