#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <exception>
#include <span>
#include <thread>
#include <vector>

#include "genreason/bits.hpp"
#include "genreason/error.hpp"
#include "genreason/mnist/conditional.hpp"
#include "genreason/mnist/image.hpp"
#include "genreason/mu.hpp"

namespace genreason::mnist {

// Per-digit conditionals p(Digit_i = 1 | pixels) exactly as the model defines
// them, plus the same values rescaled to sum to one. In Numeric mode the raw
// conditionals do not sum to one (each carries a (1 - mu) floor).
struct DigitDistribution {
  std::array<double, kDigits> conditional{};
  std::array<double, kDigits> probability{};

  static DigitDistribution from_conditionals(const std::array<double, kDigits>& raw) {
    DigitDistribution d;
    d.conditional = raw;
    double total = 0.0;
    for (double p : raw) total += p;
    for (int i = 0; i < kDigits; ++i) d.probability[i] = total > 0.0 ? raw[i] / total : 0.0;
    return d;
  }

  // Smallest digit wins ties.
  int argmax() const {
    return static_cast<int>(std::max_element(probability.begin(), probability.end()) - probability.begin());
  }
};

namespace detail {

inline void require_labeled(std::span<const BinarizedItem> train) {
  if (train.empty()) throw Error(ErrorCode::EmptyTrainingSet, "training pool is empty");
  for (std::size_t k = 0; k < train.size(); ++k) {
    if (!train[k].digit) throw Error(ErrorCode::NoSuchClass, "training item " + std::to_string(k) + " has no label");
  }
}

inline std::vector<std::size_t> distances(std::span<const BinarizedItem> train, const BitVector& test_pixels) {
  std::vector<std::size_t> h(train.size());
  for (std::size_t k = 0; k < train.size(); ++k) h[k] = hamming_distance(train[k].pixels, test_pixels);
  return h;
}

}  // namespace detail

// Data-based p(Digit_i | Pixel_1..Pixel_P) over the training pool. The
// evidence is one pixel literal per position, so the violated-literal count
// of a training item is its Hamming distance to the test image. Limit mode
// is the label frequency among all nearest neighbours; ExactOne throws an
// Undefined error unless some training image matches every pixel.
inline DigitDistribution predict_digit(std::span<const BinarizedItem> train, const BitVector& test_pixels,
                                       const MuMode& mode) {
  detail::require_labeled(train);
  const auto h = detail::distances(train, test_pixels);
  const auto c = conditional_atoms(h, kDigits, mode, [&](std::size_t k, auto&& emit) {
    emit(static_cast<std::size_t>(*train[k].digit));
  });
  std::array<double, kDigits> raw{};
  std::copy(c.probability.begin(), c.probability.end(), raw.begin());
  return DigitDistribution::from_conditionals(raw);
}

// Uniform vote among the k nearest training items by Hamming distance; at
// the k-th distance, earlier training items win.
inline DigitDistribution knn_predict(std::span<const BinarizedItem> train, const BitVector& test_pixels,
                                     std::size_t k) {
  detail::require_labeled(train);
  if (k < 1 || k > train.size()) {
    throw Error(ErrorCode::BadK, "k=" + std::to_string(k) + " with " + std::to_string(train.size()) + " items");
  }
  const auto h = detail::distances(train, test_pixels);
  // Counting selection: distances are bounded by the pixel count.
  std::vector<std::size_t> histogram(test_pixels.size() + 1, 0);
  for (auto d : h) ++histogram[d];
  std::size_t cutoff = 0;
  std::size_t below = 0;
  while (below + histogram[cutoff] < k) below += histogram[cutoff++];
  std::size_t at_cutoff = k - below;

  std::array<double, kDigits> votes{};
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (h[i] < cutoff || (h[i] == cutoff && at_cutoff > 0)) {
      if (h[i] == cutoff) --at_cutoff;
      votes[static_cast<std::size_t>(*train[i].digit)] += 1.0;
    }
  }
  for (auto& v : votes) v /= static_cast<double>(k);
  DigitDistribution d;
  d.conditional = votes;
  d.probability = votes;
  return d;
}

// Runs `score(i)` for every i in [0, n) on up to `threads` workers. Each
// result slot is written by exactly one worker, so output is independent of
// scheduling.
template <typename Result, typename Score>
std::vector<Result> parallel_map(std::size_t n, unsigned threads, Score&& score) {
  std::vector<Result> out(n);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = score(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) out[i] = score(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

inline std::vector<DigitDistribution> predict_batch(std::span<const BinarizedItem> train,
                                                    std::span<const BinarizedItem> test, const MuMode& mode,
                                                    unsigned threads = 0) {
  return parallel_map<DigitDistribution>(test.size(), threads,
                                         [&](std::size_t i) { return predict_digit(train, test[i].pixels, mode); });
}

inline std::vector<DigitDistribution> knn_batch(std::span<const BinarizedItem> train,
                                                std::span<const BinarizedItem> test, std::size_t k,
                                                unsigned threads = 0) {
  return parallel_map<DigitDistribution>(test.size(), threads,
                                         [&](std::size_t i) { return knn_predict(train, test[i].pixels, k); });
}

}  // namespace genreason::mnist
