#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <zlib.h>

#include "genreason/error.hpp"

namespace genreason::mnist {

inline constexpr std::uint32_t kImageMagic = 0x00000803;
inline constexpr std::uint32_t kLabelMagic = 0x00000801;

struct RawImage {
  std::size_t rows = 28;
  std::size_t cols = 28;
  std::vector<std::uint8_t> pixels;  // row-major, rows * cols bytes
  std::optional<int> label;
};

// Whole file contents; gzip-compressed files are inflated transparently.
inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path);
  std::vector<std::uint8_t> out;
  std::uint8_t buf[1 << 16];
  for (;;) {
    const int n = gzread(f, buf, sizeof buf);
    if (n < 0) {
      gzclose(f);
      throw Error(ErrorCode::Io, "read failed: " + path);
    }
    if (n == 0) break;
    out.insert(out.end(), buf, buf + n);
  }
  gzclose(f);
  return out;
}

namespace detail {

inline std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  if (bytes.size() < offset + 4) throw Error(ErrorCode::TruncatedFile, "header ends at byte " + std::to_string(bytes.size()));
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

inline void check_payload(std::span<const std::uint8_t> bytes, std::size_t header, std::size_t payload) {
  if (bytes.size() < header + payload) {
    throw Error(ErrorCode::TruncatedFile, "expected " + std::to_string(header + payload) + " bytes, found " +
                                              std::to_string(bytes.size()));
  }
  if (bytes.size() > header + payload) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(bytes.size() - header - payload) +
                                                  " trailing bytes after the declared payload");
  }
}

}  // namespace detail

// IDX image container: magic 0x00000803, then big-endian count, rows, cols,
// then count * rows * cols unsigned bytes.
inline std::vector<RawImage> parse_idx_images(std::span<const std::uint8_t> bytes) {
  const std::uint32_t magic = detail::read_be32(bytes, 0);
  if (magic != kImageMagic) throw Error(ErrorCode::BadMagic, "image file magic " + std::to_string(magic));
  const std::size_t count = detail::read_be32(bytes, 4);
  const std::size_t rows = detail::read_be32(bytes, 8);
  const std::size_t cols = detail::read_be32(bytes, 12);
  const std::size_t stride = rows * cols;
  if (stride != 0 && count > bytes.size() / stride) {
    throw Error(ErrorCode::TruncatedFile, std::to_string(count) + " images of " + std::to_string(rows) + "x" +
                                              std::to_string(cols) + " do not fit in " +
                                              std::to_string(bytes.size()) + " bytes");
  }
  detail::check_payload(bytes, 16, count * stride);
  std::vector<RawImage> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i].rows = rows;
    out[i].cols = cols;
    const auto* begin = bytes.data() + 16 + i * stride;
    out[i].pixels.assign(begin, begin + stride);
  }
  return out;
}

// IDX label container: magic 0x00000801, big-endian count, count bytes.
inline std::vector<int> parse_idx_labels(std::span<const std::uint8_t> bytes) {
  const std::uint32_t magic = detail::read_be32(bytes, 0);
  if (magic != kLabelMagic) throw Error(ErrorCode::BadMagic, "label file magic " + std::to_string(magic));
  const std::size_t count = detail::read_be32(bytes, 4);
  detail::check_payload(bytes, 8, count);
  std::vector<int> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = bytes[8 + i];
    if (out[i] > 9) throw Error(ErrorCode::DimensionMismatch, "label " + std::to_string(out[i]) + " outside 0..9");
  }
  return out;
}

inline std::vector<RawImage> read_idx(const std::string& images_path, const std::string& labels_path) {
  auto images = parse_idx_images(read_file_bytes(images_path));
  const auto labels = parse_idx_labels(read_file_bytes(labels_path));
  if (images.size() != labels.size()) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(images.size()) + " images but " +
                                                  std::to_string(labels.size()) + " labels");
  }
  for (std::size_t i = 0; i < images.size(); ++i) images[i].label = labels[i];
  return images;
}

inline std::vector<std::uint8_t> encode_idx_images(const std::vector<RawImage>& images, std::size_t rows,
                                                   std::size_t cols) {
  std::vector<std::uint8_t> out;
  auto be32 = [&](std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
  };
  be32(kImageMagic);
  be32(static_cast<std::uint32_t>(images.size()));
  be32(static_cast<std::uint32_t>(rows));
  be32(static_cast<std::uint32_t>(cols));
  for (const auto& img : images) out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

inline std::vector<std::uint8_t> encode_idx_labels(const std::vector<int>& labels) {
  std::vector<std::uint8_t> out;
  auto be32 = [&](std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
  };
  be32(kLabelMagic);
  be32(static_cast<std::uint32_t>(labels.size()));
  for (int l : labels) out.push_back(static_cast<std::uint8_t>(l));
  return out;
}

}  // namespace genreason::mnist
