#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "genreason/bits.hpp"
#include "genreason/error.hpp"
#include "genreason/formula.hpp"
#include "genreason/rational.hpp"

namespace genreason {

struct DatasetEntry {
  World world;
  std::uint64_t count = 1;
};

// Multiset of data, each datum supporting exactly one world. Only the
// multiplicity of each datum is observable under the uniform data prior, so
// entries carry counts. Entry order is preserved and fixes summation order.
class Dataset {
 public:
  Dataset(AtomUniverse universe, std::vector<DatasetEntry> entries)
      : universe_(std::move(universe)), entries_(std::move(entries)) {
    universe_.freeze();
    if (entries_.empty()) throw Error(ErrorCode::EmptyDataset, "a dataset needs at least one datum");
    for (const auto& e : entries_) {
      if (e.world.size() != universe_.size()) {
        throw Error(ErrorCode::UniverseMismatch, "entry width " + std::to_string(e.world.size()) +
                                                     " vs " + std::to_string(universe_.size()) + " atoms");
      }
      if (e.count == 0) throw Error(ErrorCode::EmptyDataset, "entry counts must be positive");
      if (total_ > std::numeric_limits<std::uint64_t>::max() - e.count) {
        throw Error(ErrorCode::BadCsv, "total count overflows 64 bits");
      }
      total_ += e.count;
    }
  }

  const AtomUniverse& universe() const noexcept { return universe_; }
  const std::vector<DatasetEntry>& entries() const noexcept { return entries_; }
  std::size_t atoms() const noexcept { return universe_.size(); }

  // K, the number of data.
  std::uint64_t total() const noexcept { return total_; }

  // Same multiset with equal worlds merged, in canonical world order.
  Dataset normalized() const {
    std::map<World, std::uint64_t> merged;
    for (const auto& e : entries_) merged[e.world] += e.count;
    std::vector<DatasetEntry> out;
    out.reserve(merged.size());
    for (auto& [w, c] : merged) out.push_back({w, c});
    return Dataset(universe_, std::move(out));
  }

 private:
  AtomUniverse universe_;
  std::vector<DatasetEntry> entries_;
  std::uint64_t total_ = 0;
};

// p(M): mass count/K on every supported world; absent worlds are impossible.
class WorldDist {
 public:
  explicit WorldDist(std::map<World, Rational> mass) : mass_(std::move(mass)) {}

  const std::map<World, Rational>& support() const noexcept { return mass_; }

  Rational exact(const World& w) const {
    auto it = mass_.find(w);
    return it == mass_.end() ? Rational(0) : it->second;
  }
  double probability(const World& w) const { return to_double(exact(w)); }
  bool is_possible(const World& w) const { return mass_.count(w) != 0; }

 private:
  std::map<World, Rational> mass_;
};

inline WorldDist world_dist(const Dataset& ds) {
  std::map<World, std::uint64_t> counts;
  for (const auto& e : ds.entries()) counts[e.world] += e.count;
  std::map<World, Rational> mass;
  for (auto& [w, c] : counts) mass.emplace(w, make_rational(c, ds.total()));
  return WorldDist(std::move(mass));
}

// Worlds that satisfy every formula in gamma and carry nonzero mass.
inline std::vector<World> possible_models(const Dataset& ds, const std::vector<Formula>& gamma,
                                          std::size_t cap = kDefaultEnumerationCap) {
  const TruthTable table = joint_truth_table(gamma, ds.atoms(), cap);
  const WorldDist dist = world_dist(ds);
  std::vector<World> out;
  for (const auto& [w, mass] : dist.support()) {
    if (table.test(w.to_index())) out.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Worlds CSV: header of atom names plus one `count` column, then one row per
// world of 0/1 cells and a positive integer count. No whitespace is allowed.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline bool parse_count(const std::string& s, std::uint64_t& out) {
  if (s.empty() || s.size() > 20 || s[0] < '1' || s[0] > '9') return false;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    const std::uint64_t d = static_cast<std::uint64_t>(c - '0');
    if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) return false;
    v = v * 10 + d;
  }
  out = v;
  return true;
}

}  // namespace detail

inline Dataset parse_worlds_csv(std::istream& in) {
  auto fail = [](std::size_t line, const std::string& msg) {
    throw Error(ErrorCode::BadCsv, "line " + std::to_string(line) + ": " + msg);
  };
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line()) fail(1, "missing header");
  const auto header = detail::split_csv_line(line);
  std::size_t count_col = header.size();
  std::vector<std::string> names;
  std::vector<std::size_t> atom_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "count") {
      if (count_col != header.size()) fail(lineno, "more than one count column");
      count_col = c;
    } else {
      names.push_back(header[c]);
      atom_col.push_back(c);
    }
  }
  if (count_col == header.size()) fail(lineno, "no count column");
  AtomUniverse universe;
  try {
    universe = AtomUniverse(names);
  } catch (const Error& e) {
    fail(lineno, e.what());
  }

  std::vector<DatasetEntry> entries;
  while (next_line()) {
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != header.size()) {
      fail(lineno, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(cells.size()));
    }
    DatasetEntry e{World(names.size()), 0};
    for (std::size_t a = 0; a < atom_col.size(); ++a) {
      const auto& cell = cells[atom_col[a]];
      if (cell == "1") {
        e.world.set(a);
      } else if (cell != "0") {
        fail(lineno, "atom '" + names[a] + "' must be 0 or 1, got '" + cell + "'");
      }
    }
    if (!detail::parse_count(cells[count_col], e.count)) {
      fail(lineno, "count must be a positive integer, got '" + cells[count_col] + "'");
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw Error(ErrorCode::EmptyDataset, "worlds CSV has no rows");
  return Dataset(std::move(universe), std::move(entries));
}

inline Dataset read_worlds_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return parse_worlds_csv(in);
}

inline void write_worlds_csv(std::ostream& out, const Dataset& ds) {
  for (const auto& n : ds.universe().names()) out << n << ',';
  out << "count\n";
  for (const auto& e : ds.entries()) {
    for (std::size_t a = 0; a < ds.atoms(); ++a) out << (e.world.test(a) ? '1' : '0') << ',';
    out << e.count << '\n';
  }
}

}  // namespace genreason
