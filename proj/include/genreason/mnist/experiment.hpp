#pragma once

#include <array>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "genreason/error.hpp"
#include "genreason/mnist/auc.hpp"
#include "genreason/mnist/image.hpp"
#include "genreason/mnist/predict.hpp"
#include "genreason/mu.hpp"

namespace genreason::mnist {

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::vector<int> labels_of(std::span<const BinarizedItem> items) {
  std::vector<int> out;
  out.reserve(items.size());
  for (const auto& item : items) {
    if (!item.digit) throw Error(ErrorCode::NoSuchClass, "unlabeled item");
    out.push_back(*item.digit);
  }
  return out;
}

// Index of the first item of each digit, if any.
inline std::array<std::optional<std::size_t>, kDigits> first_of_each_digit(std::span<const BinarizedItem> items) {
  std::array<std::optional<std::size_t>, kDigits> out{};
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].digit && !out[static_cast<std::size_t>(*items[i].digit)]) {
      out[static_cast<std::size_t>(*items[i].digit)] = i;
    }
  }
  return out;
}

struct CurveRow {
  std::string method;
  std::size_t size;
  double auc;
};

// Macro-AUC for every (training prefix size, method) pair. Methods are the
// generative model at each mu mode ("mu=<label>") and kNN at each k
// ("knn=<k>"); rows come out size-major in the order given.
inline std::vector<CurveRow> learning_curve(std::span<const BinarizedItem> train, std::span<const BinarizedItem> test,
                                            std::span<const std::size_t> sizes, std::span<const MuMode> modes,
                                            std::span<const std::size_t> ks, unsigned threads = 0) {
  const auto labels = labels_of(test);
  std::vector<CurveRow> rows;
  for (const std::size_t size : sizes) {
    if (size == 0 || size > train.size()) {
      throw Error(ErrorCode::BadIndex, "training size " + std::to_string(size) + " outside 1.." +
                                           std::to_string(train.size()));
    }
    const auto prefix = train.first(size);
    for (const auto& mode : modes) {
      const auto scores = predict_batch(prefix, test, mode, threads);
      rows.push_back({"mu=" + mode.label(), size, auc_macro(scores, labels).macro});
    }
    for (const std::size_t k : ks) {
      const auto scores = knn_batch(prefix, test, k, threads);
      rows.push_back({"knn=" + std::to_string(k), size, auc_macro(scores, labels).macro});
    }
  }
  return rows;
}

inline void write_curve_csv(std::ostream& out, std::span<const CurveRow> rows) {
  out << "method,size,auc\n";
  for (const auto& r : rows) out << r.method << ',' << r.size << ',' << format_number(r.auc) << '\n';
}

inline void write_predictions_csv(std::ostream& out, std::span<const DigitDistribution> scores,
                                  std::span<const int> labels) {
  out << "test_index,label";
  for (int i = 0; i < kDigits; ++i) out << ",p" << i;
  out << ",argmax\n";
  for (std::size_t t = 0; t < scores.size(); ++t) {
    out << t << ',' << labels[t];
    for (double p : scores[t].probability) out << ',' << format_number(p);
    out << ',' << scores[t].argmax() << '\n';
  }
}

inline void write_roc_csv(std::ostream& out, std::span<const DigitDistribution> scores, std::span<const int> labels) {
  out << "digit,threshold,fpr,tpr\n";
  const std::size_t n = scores.size();
  std::vector<double> s(n);
  const std::unique_ptr<bool[]> positive(new bool[n]);
  for (int c = 0; c < kDigits; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = scores[i].probability[static_cast<std::size_t>(c)];
      positive[i] = labels[i] == c;
    }
    for (const auto& p : roc_curve(s, std::span<const bool>(positive.get(), n))) {
      out << c << ',' << format_number(p.threshold) << ',' << format_number(p.fpr) << ',' << format_number(p.tpr)
          << '\n';
    }
  }
}

inline double accuracy(std::span<const DigitDistribution> scores, std::span<const int> labels) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) hits += scores[i].argmax() == labels[i] ? 1 : 0;
  return scores.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(scores.size());
}

}  // namespace genreason::mnist
