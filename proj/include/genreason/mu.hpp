#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "genreason/error.hpp"
#include "genreason/rational.hpp"

namespace genreason {

// How the Bernoulli parameter mu is treated: exactly one, the limit mu -> 1,
// or a fixed value strictly between 0.5 and 1.
class MuMode {
 public:
  enum class Kind { ExactOne, Limit, Numeric };

  static MuMode exact_one() { return MuMode(Kind::ExactOne, Rational(1), "exact1"); }
  static MuMode limit() { return MuMode(Kind::Limit, Rational(1), "limit"); }

  static MuMode numeric(const Rational& mu) {
    if (!(mu > Rational(1, 2) && mu < Rational(1))) {
      throw Error(ErrorCode::BadMu, "mu must lie in the open interval (0.5, 1)");
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", to_double(mu));
    return MuMode(Kind::Numeric, mu, buf);
  }

  // The rational is the exact binary value of `mu`.
  static MuMode numeric(double mu) {
    if (!std::isfinite(mu)) throw Error(ErrorCode::BadMu, "mu must be finite");
    return numeric(Rational(mu));
  }

  // "exact1", "limit", or a plain decimal such as "0.75".
  static MuMode parse(std::string_view spec) {
    if (spec == "exact1") return exact_one();
    if (spec == "limit") return limit();
    Rational mu;
    if (!parse_decimal(spec, mu)) {
      throw Error(ErrorCode::BadMu, "expected exact1, limit or a decimal in (0.5,1), got '" + std::string(spec) + "'");
    }
    MuMode m = numeric(mu);
    m.label_ = std::string(spec);
    return m;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_numeric() const noexcept { return kind_ == Kind::Numeric; }
  const Rational& exact_value() const noexcept { return mu_; }
  double value() const noexcept { return value_; }
  const std::string& label() const noexcept { return label_; }

  // ln(mu) and ln(1 - mu); only meaningful in Numeric mode.
  double log_mu() const noexcept { return std::log(value_); }
  double log_complement() const noexcept { return std::log1p(-value_); }

 private:
  MuMode(Kind kind, Rational mu, std::string label)
      : kind_(kind), mu_(std::move(mu)), value_(to_double(mu_)), label_(std::move(label)) {}

  Kind kind_;
  Rational mu_;
  double value_;
  std::string label_;
};

}  // namespace genreason
