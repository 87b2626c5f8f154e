#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "genreason/engine.hpp"
#include "genreason/error.hpp"
#include "genreason/log_space.hpp"
#include "genreason/mu.hpp"

namespace genreason::mnist {

// p(target_j = 1 | evidence) for every target atom j at once, where datum k
// violates `mismatches[k]` evidence literals. Entries are grouped by mismatch
// count first, so the result does not depend on data order.
struct AtomConditionals {
  std::vector<double> probability;
  // Exact fractions numerators[j] / denominator; filled in ExactOne and Limit.
  std::vector<std::uint64_t> numerators;
  std::uint64_t denominator = 0;
};

// `visit(k, emit)` must call emit(j) once for every target atom j that is
// true in datum k.
template <typename Visit>
AtomConditionals conditional_atoms(std::span<const std::size_t> mismatches, std::size_t target_width,
                                   const MuMode& mode, Visit&& visit) {
  if (mismatches.empty()) throw Error(ErrorCode::EmptyTrainingSet, "no data to condition on");
  std::size_t max_h = 0;
  for (auto h : mismatches) max_h = std::max(max_h, h);

  // Sparse table: one row of target counts per mismatch value that occurs.
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> row_of(max_h + 1, npos);
  std::vector<std::uint64_t> data_count;
  std::vector<std::vector<std::uint64_t>> target_count;
  for (std::size_t k = 0; k < mismatches.size(); ++k) {
    std::size_t& row = row_of[mismatches[k]];
    if (row == npos) {
      row = data_count.size();
      data_count.push_back(0);
      target_count.emplace_back(target_width, 0);
    }
    ++data_count[row];
    auto& counts = target_count[row];
    visit(k, [&counts](std::size_t j) { ++counts[j]; });
  }

  std::size_t best = 0;
  while (row_of[best] == npos) ++best;

  AtomConditionals out;
  out.probability.resize(target_width);
  if (mode.kind() != MuMode::Kind::Numeric) {
    if (mode.kind() == MuMode::Kind::ExactOne && best != 0) {
      throw Error(ErrorCode::Undefined, kEmptyPossibleModels);
    }
    const std::size_t row = row_of[best];
    out.denominator = data_count[row];
    out.numerators = target_count[row];
    for (std::size_t j = 0; j < target_width; ++j) {
      out.probability[j] = static_cast<double>(out.numerators[j]) / static_cast<double>(out.denominator);
    }
    return out;
  }

  // Weight of a datum with h mismatches, relative to mu^n:
  //   ((1 - mu) / mu)^h = exp(-h * log_odds).
  const double mu = mode.value();
  const double log_odds = mode.log_mu() - mode.log_complement();
  LogSumExp denominator;
  std::vector<LogSumExp> numerator(target_width);
  for (std::size_t h = best; h <= max_h; ++h) {
    const std::size_t row = row_of[h];
    if (row == npos) continue;
    const double log_scale = -static_cast<double>(h - best) * log_odds;
    denominator.add(std::log(static_cast<double>(data_count[row])) + log_scale);
    for (std::size_t j = 0; j < target_width; ++j) {
      if (const auto c = target_count[row][j]) numerator[j].add(std::log(static_cast<double>(c)) + log_scale);
    }
  }
  // sum_k w_k p(target_j | d_k) = (1 - mu) W + (2 mu - 1) W_j.
  const double log_den = denominator.value();
  for (std::size_t j = 0; j < target_width; ++j) {
    const double share = numerator[j].empty() ? 0.0 : std::exp(numerator[j].value() - log_den);
    out.probability[j] = (1.0 - mu) + (2.0 * mu - 1.0) * share;
  }
  return out;
}

// Visits the set bits of a bit vector, in increasing position.
template <typename Emit>
void for_each_set_bit(const BitVector& v, Emit&& emit) {
  const auto& words = v.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    auto word = words[w];
    while (word) {
      emit(w * BitVector::kWordBits + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
}

}  // namespace genreason::mnist
