#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "genreason/error.hpp"
#include "genreason/mnist/image.hpp"
#include "genreason/mnist/predict.hpp"

namespace genreason::mnist {

// Area under the ROC curve via the Mann-Whitney rank statistic; tied scores
// share their mean rank, so a tied positive/negative pair counts 1/2.
// Returns nullopt unless both classes are present.
inline std::optional<double> roc_auc(std::span<const double> scores, std::span<const bool> positive) {
  if (scores.size() != positive.size()) throw Error(ErrorCode::DimensionMismatch, "scores vs labels");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Twice the rank sum of positives keeps tie midranks integral.
  double twice_rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double twice_midrank = static_cast<double>(i + 1 + j);  // ranks i+1..j
    for (std::size_t t = i; t < j; ++t) {
      if (positive[order[t]]) {
        twice_rank_sum += twice_midrank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) return std::nullopt;
  const double p = static_cast<double>(n_pos);
  const double u = twice_rank_sum / 2.0 - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(n_neg));
}

struct RocPoint {
  double threshold;
  double fpr;
  double tpr;
};

// One point per distinct score, sweeping the threshold from high to low,
// starting at (0, 0).
inline std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const bool> positive) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  const auto n_pos = static_cast<double>(std::count(positive.begin(), positive.end(), true));
  const double n_neg = static_cast<double>(n) - n_pos;
  std::vector<RocPoint> out{{std::numeric_limits<double>::infinity(), 0.0, 0.0}};
  double tp = 0;
  double fp = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) {
      (positive[order[j]] ? tp : fp) += 1;
      ++j;
    }
    out.push_back({scores[order[i]], n_neg > 0 ? fp / n_neg : 0.0, n_pos > 0 ? tp / n_pos : 0.0});
    i = j;
  }
  return out;
}

struct MacroAuc {
  double macro = 0.0;
  std::array<std::optional<double>, kDigits> per_class{};
  std::vector<int> skipped;  // classes lacking a positive or a negative
};

// One-vs-rest AUC per digit on the normalized probabilities, averaged over
// the digits that have both positives and negatives.
inline MacroAuc auc_macro(std::span<const DigitDistribution> scores, std::span<const int> labels) {
  if (scores.empty() || scores.size() != labels.size()) {
    throw Error(ErrorCode::NoValidClass, "need equally many scores and labels, at least one");
  }
  MacroAuc out;
  const std::size_t n = scores.size();
  std::vector<double> s(n);
  const std::unique_ptr<bool[]> positive(new bool[n]);
  double total = 0.0;
  int included = 0;
  for (int c = 0; c < kDigits; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = scores[i].probability[static_cast<std::size_t>(c)];
      positive[i] = labels[i] == c;
    }
    out.per_class[static_cast<std::size_t>(c)] = roc_auc(s, std::span<const bool>(positive.get(), n));
    if (auto a = out.per_class[static_cast<std::size_t>(c)]) {
      total += *a;
      ++included;
    } else {
      out.skipped.push_back(c);
    }
  }
  if (included == 0) throw Error(ErrorCode::NoValidClass, "no digit has both positives and negatives");
  out.macro = total / included;
  return out;
}

}  // namespace genreason::mnist
