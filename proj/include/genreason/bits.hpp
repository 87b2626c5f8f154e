#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "genreason/error.hpp"

namespace genreason {

// Fixed-width bit vector packed into 64-bit words, bit i in word i/64.
// Unused high bits of the last word are always zero, so word-wise
// comparisons and popcounts need no masking.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t width) : width_(width), words_(word_count(width), 0) {}

  // Bits of `index` become the low bits of the vector; width must be <= 64.
  static BitVector from_index(std::uint64_t index, std::size_t width) {
    BitVector v(width);
    if (width > 0) {
      v.words_[0] = width >= kWordBits ? index : index & ((Word{1} << width) - 1);
    }
    return v;
  }

  std::size_t size() const noexcept { return width_; }
  std::size_t num_words() const noexcept { return words_.size(); }
  const std::vector<Word>& words() const noexcept { return words_; }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }

  void set(std::size_t i, bool value = true) {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  // Integer value of the pattern; only meaningful for width <= 64.
  std::uint64_t to_index() const noexcept { return words_.empty() ? 0 : words_[0]; }

  // Canonical world order: integer order of the bit pattern.
  std::strong_ordering operator<=>(const BitVector& other) const noexcept {
    if (auto c = width_ <=> other.width_; c != 0) return c;
    for (std::size_t w = words_.size(); w-- > 0;) {
      if (auto c = words_[w] <=> other.words_[w]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }
  bool operator==(const BitVector& other) const noexcept = default;

  // "0101..." with bit 0 first.
  std::string to_string() const {
    std::string s(width_, '0');
    for (std::size_t i = 0; i < width_; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

 private:
  static std::size_t word_count(std::size_t width) { return (width + kWordBits - 1) / kWordBits; }

  std::size_t width_ = 0;
  std::vector<Word> words_;
};

inline void require_same_width(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::UniverseMismatch,
                "bit widths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
}

inline std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
  require_same_width(a, b);
  const auto& x = a.words();
  const auto& y = b.words();
  std::size_t d = 0;
  for (std::size_t w = 0; w < x.size(); ++w) d += static_cast<std::size_t>(std::popcount(x[w] ^ y[w]));
  return d;
}

// Hamming distance restricted to the positions set in `mask`.
inline std::size_t masked_hamming_distance(const BitVector& a, const BitVector& b,
                                           const BitVector& mask) {
  require_same_width(a, b);
  require_same_width(a, mask);
  const auto& x = a.words();
  const auto& y = b.words();
  const auto& m = mask.words();
  std::size_t d = 0;
  for (std::size_t w = 0; w < x.size(); ++w) {
    d += static_cast<std::size_t>(std::popcount((x[w] ^ y[w]) & m[w]));
  }
  return d;
}

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const noexcept {
    std::size_t h = std::hash<std::size_t>{}(v.size());
    for (auto w : v.words()) h ^= std::hash<BitVector::Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// A possible world: a total truth assignment, atom i at bit i.
using World = BitVector;

}  // namespace genreason
