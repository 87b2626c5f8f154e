#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genreason/bits.hpp"
#include "genreason/error.hpp"
#include "genreason/formula.hpp"
#include "genreason/mnist/idx.hpp"

namespace genreason::mnist {

inline constexpr int kDigits = 10;
inline constexpr int kDefaultThreshold = 30;

// One datum: pixel truth values plus the digit label. The world it supports
// has atoms digit_0..digit_9 followed by pixel_0..pixel_{P-1}.
struct BinarizedItem {
  BitVector pixels;
  std::optional<int> digit;

  BitVector digit_bits() const {
    BitVector b(kDigits);
    if (digit) b.set(static_cast<std::size_t>(*digit));
    return b;
  }
};

// Pixel j is true iff its greyscale is strictly above `threshold`.
inline BinarizedItem binarize(const RawImage& img, int threshold = kDefaultThreshold) {
  if (threshold < 0 || threshold > 255) throw Error(ErrorCode::BadIndex, "threshold must be in 0..255");
  BinarizedItem item{BitVector(img.pixels.size()), img.label};
  for (std::size_t j = 0; j < img.pixels.size(); ++j) {
    if (img.pixels[j] > threshold) item.pixels.set(j);
  }
  return item;
}

inline std::vector<BinarizedItem> binarize_all(std::span<const RawImage> images, int threshold = kDefaultThreshold) {
  std::vector<BinarizedItem> out;
  out.reserve(images.size());
  for (const auto& img : images) out.push_back(binarize(img, threshold));
  return out;
}

// Universe digit_0..digit_9, pixel_0..pixel_{pixels-1}, for handing MNIST
// items to the general engine.
inline AtomUniverse item_universe(std::size_t pixels) {
  std::vector<std::string> names;
  for (int i = 0; i < kDigits; ++i) names.push_back("digit_" + std::to_string(i));
  for (std::size_t j = 0; j < pixels; ++j) names.push_back("pixel_" + std::to_string(j));
  return AtomUniverse(names);
}

inline World item_world(const BinarizedItem& item) {
  World w(kDigits + item.pixels.size());
  if (item.digit) w.set(static_cast<std::size_t>(*item.digit));
  for (std::size_t j = 0; j < item.pixels.size(); ++j) {
    if (item.pixels.test(j)) w.set(kDigits + j);
  }
  return w;
}

// Greyscale byte for a probability: round(255 p), optionally inverted.
inline std::uint8_t to_grey(double p, bool invert = false) {
  const double clamped = std::fmin(1.0, std::fmax(0.0, p));
  const auto v = static_cast<std::uint8_t>(std::lround(255.0 * clamped));
  return invert ? static_cast<std::uint8_t>(255 - v) : v;
}

// Binary PGM (P5, maxval 255).
inline void write_pgm(const std::string& path, std::size_t width, std::size_t height,
                      std::span<const std::uint8_t> grey) {
  if (grey.size() != width * height) {
    throw Error(ErrorCode::DimensionMismatch, "PGM payload has " + std::to_string(grey.size()) + " bytes");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(grey.data()), static_cast<std::streamsize>(grey.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path);
}

}  // namespace genreason::mnist
