#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "genreason/dataset.hpp"
#include "genreason/error.hpp"
#include "genreason/formula.hpp"
#include "genreason/log_space.hpp"
#include "genreason/mu.hpp"
#include "genreason/rational.hpp"

namespace genreason {

inline constexpr const char* kEmptyPossibleModels = "empty possible-model set";

// Probability or an explicit undefined marker (a vanishing denominator).
class QueryResult {
 public:
  static QueryResult exact(Rational value) {
    QueryResult r;
    r.value_ = to_double(value);
    r.rational_ = std::move(value);
    return r;
  }

  static QueryResult approximate(double value) {
    QueryResult r;
    r.value_ = value;
    return r;
  }

  static QueryResult undefined(std::string reason) {
    QueryResult r;
    r.reason_ = std::move(reason);
    return r;
  }

  bool is_defined() const noexcept { return !reason_.has_value(); }
  bool is_exact() const noexcept { return rational_.has_value(); }

  double value() const {
    if (!is_defined()) throw Error(ErrorCode::Undefined, *reason_);
    return value_;
  }

  const Rational& rational() const {
    if (!is_defined()) throw Error(ErrorCode::Undefined, *reason_);
    if (!rational_) throw Error(ErrorCode::Undefined, "result is not exact");
    return *rational_;
  }

  const std::string& reason() const {
    static const std::string none;
    return reason_ ? *reason_ : none;
  }

 private:
  QueryResult() = default;

  double value_ = 0.0;
  std::optional<Rational> rational_;
  std::optional<std::string> reason_;
};

// Exponents of p(alpha | m) = mu^a (1 - mu)^b.
struct Likelihood {
  int mu_exponent;
  int complement_exponent;
};

inline Likelihood likelihood(const Formula& f, const World& w) {
  const bool sat = evaluate(f, w);
  return {sat ? 1 : 0, sat ? 0 : 1};
}

// p(alpha) as constant + slope * mu.
struct AffineInMu {
  Rational constant;
  Rational slope;

  Rational at(const Rational& mu) const { return constant + slope * mu; }
};

namespace detail {

inline void check_formula_widths(const Dataset& ds, const Formula& alpha, const std::vector<Formula>& delta) {
  require_fits(alpha, ds.atoms());
  for (const auto& f : delta) require_fits(f, ds.atoms());
}

inline std::size_t mismatches(const std::vector<Formula>& delta, const World& w) {
  std::size_t h = 0;
  for (const auto& f : delta) h += detail::eval(f, w) ? 0 : 1;
  return h;
}

}  // namespace detail

// With S the data count satisfying alpha:
//   p(alpha) = S/K * mu + (K - S)/K * (1 - mu) = (K - S)/K + (2S - K)/K * mu.
inline AffineInMu marginal_affine(const Dataset& ds, const Formula& alpha) {
  require_fits(alpha, ds.atoms());
  std::uint64_t sat = 0;
  for (const auto& e : ds.entries()) {
    if (detail::eval(alpha, e.world)) sat += e.count;
  }
  const Rational k{boost::multiprecision::cpp_int(ds.total())};
  const Rational s{boost::multiprecision::cpp_int(sat)};
  return {(k - s) / k, (2 * s - k) / k};
}

// Marginal probability of a formula. Always exact: the marginal is affine in
// mu, and ExactOne and Limit coincide at S/K.
inline QueryResult prob_marginal(const Dataset& ds, const Formula& alpha, const MuMode& mode) {
  return QueryResult::exact(marginal_affine(ds, alpha).at(mode.exact_value()));
}

// Conditional probability p(alpha | delta), computed over data entries.
//
//   ExactOne  ratio of data masses over the possible models of delta;
//             undefined when no datum satisfies all of delta.
//   Limit     restrict to entries with the fewest violated delta formulas
//             and take the fraction whose world satisfies alpha.
//   Numeric   sum_d p(alpha|d) prod_b p(b|d) / sum_d prod_b p(b|d), in log
//             space with entries visited in input order.
inline QueryResult prob_conditional(const Dataset& ds, const Formula& alpha, std::vector<Formula> delta,
                                    const MuMode& mode) {
  delta = deduplicate(std::move(delta));
  detail::check_formula_widths(ds, alpha, delta);

  switch (mode.kind()) {
    case MuMode::Kind::ExactOne: {
      std::uint64_t num = 0;
      std::uint64_t den = 0;
      for (const auto& e : ds.entries()) {
        if (detail::mismatches(delta, e.world) != 0) continue;
        den += e.count;
        if (detail::eval(alpha, e.world)) num += e.count;
      }
      if (den == 0) return QueryResult::undefined(kEmptyPossibleModels);
      return QueryResult::exact(make_rational(num, den));
    }
    case MuMode::Kind::Limit: {
      // Min-plus over (1 - mu)-exponents: only the smallest exponent survives.
      std::size_t best = std::numeric_limits<std::size_t>::max();
      std::uint64_t num = 0;
      std::uint64_t den = 0;
      for (const auto& e : ds.entries()) {
        const std::size_t h = detail::mismatches(delta, e.world);
        if (h > best) continue;
        if (h < best) {
          best = h;
          num = den = 0;
        }
        den += e.count;
        if (detail::eval(alpha, e.world)) num += e.count;
      }
      return QueryResult::exact(make_rational(num, den));
    }
    case MuMode::Kind::Numeric: {
      const double log_mu = mode.log_mu();
      const double log_cmu = mode.log_complement();
      const double n = static_cast<double>(delta.size());
      LogSumExp numerator;
      LogSumExp denominator;
      for (const auto& e : ds.entries()) {
        const double h = static_cast<double>(detail::mismatches(delta, e.world));
        const double log_weight = std::log(static_cast<double>(e.count)) + (n - h) * log_mu + h * log_cmu;
        denominator.add(log_weight);
        numerator.add(log_weight + (detail::eval(alpha, e.world) ? log_mu : log_cmu));
      }
      return QueryResult::approximate(std::exp(numerator.value() - denominator.value()));
    }
  }
  return QueryResult::undefined("unknown mode");
}

// The same conditional evaluated as explicit sums over models:
//   sum_m p(alpha|m) p(delta|m) p(m) / sum_m p(delta|m) p(m)
// restricted to the universe enumeration cap. ExactOne follows the
// possible-model ratio directly.
inline QueryResult prob_conditional_by_models(const Dataset& ds, const Formula& alpha, std::vector<Formula> delta,
                                              const MuMode& mode, std::size_t cap = kDefaultEnumerationCap) {
  delta = deduplicate(std::move(delta));
  detail::check_formula_widths(ds, alpha, delta);
  const std::size_t atoms = ds.atoms();
  const TruthTable alpha_table(alpha, atoms, cap);
  std::vector<TruthTable> delta_tables;
  for (const auto& f : delta) delta_tables.emplace_back(f, atoms, cap);
  const WorldDist dist = world_dist(ds);

  auto violated = [&](std::uint64_t m) {
    std::size_t h = 0;
    for (const auto& t : delta_tables) h += t.test(m) ? 0 : 1;
    return h;
  };

  switch (mode.kind()) {
    case MuMode::Kind::ExactOne: {
      Rational num = 0;
      Rational den = 0;
      for (const World& m : possible_models(ds, delta, cap)) {
        den += dist.exact(m);
        if (alpha_table.test(m.to_index())) num += dist.exact(m);
      }
      if (den == 0) return QueryResult::undefined(kEmptyPossibleModels);
      return QueryResult::exact(num / den);
    }
    case MuMode::Kind::Limit: {
      std::size_t best = std::numeric_limits<std::size_t>::max();
      for (const auto& [m, p] : dist.support()) best = std::min(best, violated(m.to_index()));
      Rational num = 0;
      Rational den = 0;
      for (const auto& [m, p] : dist.support()) {
        if (violated(m.to_index()) != best) continue;
        den += p;
        if (alpha_table.test(m.to_index())) num += p;
      }
      return QueryResult::exact(num / den);
    }
    case MuMode::Kind::Numeric: {
      const double log_mu = mode.log_mu();
      const double log_cmu = mode.log_complement();
      const double n = static_cast<double>(delta.size());
      LogSumExp numerator;
      LogSumExp denominator;
      for (std::uint64_t m = 0; m < alpha_table.num_worlds(); ++m) {
        const World w = World::from_index(m, atoms);
        if (!dist.is_possible(w)) continue;
        const double h = static_cast<double>(violated(m));
        const double log_weight = std::log(dist.probability(w)) + (n - h) * log_mu + h * log_cmu;
        denominator.add(log_weight);
        numerator.add(log_weight + (alpha_table.test(m) ? log_mu : log_cmu));
      }
      return QueryResult::approximate(std::exp(numerator.value() - denominator.value()));
    }
  }
  return QueryResult::undefined("unknown mode");
}

// delta |= alpha: every model of delta is a model of alpha.
inline bool entails_classical(const std::vector<Formula>& delta, const Formula& alpha, const AtomUniverse& universe,
                              std::size_t cap = kDefaultEnumerationCap) {
  const TruthTable models = joint_truth_table(delta, universe.size(), cap);
  const TruthTable alpha_models(alpha, universe.size(), cap);
  bool ok = true;
  models.for_each_true([&](std::uint64_t m) { ok = ok && alpha_models.test(m); });
  return ok;
}

// Every possible model of delta is a possible model of alpha.
inline bool entails_empirical(const Dataset& ds, const std::vector<Formula>& delta, const Formula& alpha,
                              std::size_t cap = kDefaultEnumerationCap) {
  const TruthTable alpha_models(alpha, ds.atoms(), cap);
  for (const World& m : possible_models(ds, delta, cap)) {
    if (!alpha_models.test(m.to_index())) return false;
  }
  return true;
}

}  // namespace genreason
