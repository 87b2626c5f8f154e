#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "genreason/bits.hpp"
#include "genreason/error.hpp"
#include "genreason/mnist/conditional.hpp"
#include "genreason/mnist/image.hpp"
#include "genreason/mu.hpp"

namespace genreason::mnist {

// p(Pixel_j = 1 | Digit_i = 1) for every pixel. The evidence is the single
// literal digit_i, so an item mismatches it iff its label differs. Limit
// mode reduces to the per-pixel mean over items of that digit.
inline AtomConditionals class_image_conditionals(std::span<const BinarizedItem> items, int digit,
                                                 const MuMode& mode) {
  if (digit < 0 || digit >= kDigits) throw Error(ErrorCode::NoSuchClass, "digit " + std::to_string(digit));
  if (items.empty()) throw Error(ErrorCode::NoSuchClass, "empty pool");
  bool any = false;
  std::vector<std::size_t> h(items.size());
  for (std::size_t k = 0; k < items.size(); ++k) {
    const bool match = items[k].digit == digit;
    any = any || match;
    h[k] = match ? 0 : 1;
    if (items[k].pixels.size() != items[0].pixels.size()) {
      throw Error(ErrorCode::UniverseMismatch, "items have different pixel counts");
    }
  }
  if (!any) throw Error(ErrorCode::NoSuchClass, "no item labeled " + std::to_string(digit));
  return conditional_atoms(h, items[0].pixels.size(), mode,
                           [&](std::size_t k, auto&& emit) { for_each_set_bit(items[k].pixels, emit); });
}

inline std::vector<double> generate_class_image(std::span<const BinarizedItem> items, int digit, const MuMode& mode) {
  return class_image_conditionals(items, digit, mode).probability;
}

struct PixelObservation {
  std::size_t index;
  bool value;
};

// Conditionals for the pixels that were not observed, in increasing index.
struct Completion {
  std::vector<std::size_t> indices;
  std::vector<double> probability;
};

// p(Pixel_j | observed pixels) for every unobserved j, conditioning on one
// literal per observed pixel.
inline Completion complete_image(std::span<const BinarizedItem> train, std::span<const PixelObservation> observed,
                                 const MuMode& mode) {
  if (train.empty()) throw Error(ErrorCode::EmptyTrainingSet, "training pool is empty");
  const std::size_t width = train[0].pixels.size();
  BitVector mask(width);
  BitVector bits(width);
  for (const auto& o : observed) {
    if (o.index >= width) throw Error(ErrorCode::BadIndex, "pixel " + std::to_string(o.index));
    if (mask.test(o.index)) throw Error(ErrorCode::DuplicateIndex, "pixel " + std::to_string(o.index));
    mask.set(o.index);
    bits.set(o.index, o.value);
  }

  Completion out;
  for (std::size_t j = 0; j < width; ++j) {
    if (!mask.test(j)) out.indices.push_back(j);
  }
  if (out.indices.empty()) return out;

  std::vector<std::size_t> h(train.size());
  for (std::size_t k = 0; k < train.size(); ++k) h[k] = masked_hamming_distance(train[k].pixels, bits, mask);
  const auto c = conditional_atoms(h, width, mode,
                                   [&](std::size_t k, auto&& emit) { for_each_set_bit(train[k].pixels, emit); });
  out.probability.reserve(out.indices.size());
  for (auto j : out.indices) out.probability.push_back(c.probability[j]);
  return out;
}

// The first rows * cols pixels of `pixels`, as observations.
inline std::vector<PixelObservation> row_prefix_observation(const BitVector& pixels, std::size_t rows,
                                                            std::size_t cols = 28) {
  const std::size_t n = rows * cols;
  if (n > pixels.size()) throw Error(ErrorCode::BadIndex, std::to_string(rows) + " rows exceed the image");
  std::vector<PixelObservation> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.push_back({j, pixels.test(j)});
  return out;
}

// Full greyscale image: observed pixels as 0/255, generated ones from their
// conditionals. `invert` applies to generated pixels only.
inline std::vector<std::uint8_t> render_completion(std::size_t width, std::span<const PixelObservation> observed,
                                                   const Completion& completion, bool invert) {
  std::vector<std::uint8_t> grey(width, 0);
  for (const auto& o : observed) grey[o.index] = o.value ? 255 : 0;
  for (std::size_t i = 0; i < completion.indices.size(); ++i) {
    grey[completion.indices[i]] = to_grey(completion.probability[i], invert);
  }
  return grey;
}

}  // namespace genreason::mnist
