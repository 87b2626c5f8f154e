#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace genreason {

using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::uint64_t num, std::uint64_t den) {
  return Rational(boost::multiprecision::cpp_int(num), boost::multiprecision::cpp_int(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact value of a plain decimal literal such as "0.75" or "1". Returns
// false on anything else (signs, exponents, empty fraction digits).
inline bool parse_decimal(std::string_view text, Rational& out) {
  if (text.empty()) return false;
  boost::multiprecision::cpp_int num = 0;
  boost::multiprecision::cpp_int den = 1;
  bool seen_point = false;
  bool digits_before = false;
  bool digits_after = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) return false;
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_point) {
        den *= 10;
        digits_after = true;
      } else {
        digits_before = true;
      }
    } else {
      return false;
    }
  }
  if (!digits_before || (seen_point && !digits_after)) return false;
  out = Rational(num, den);
  return true;
}

}  // namespace genreason
