#pragma once

#include <cmath>
#include <limits>

namespace genreason {

// Streaming log-sum-exp. The result depends on the order of add() calls, so
// callers that need reproducible output must feed terms in a fixed order.
class LogSumExp {
 public:
  void add(double log_term) noexcept {
    if (log_term == -std::numeric_limits<double>::infinity()) return;
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }

  bool empty() const noexcept { return sum_ == 0.0; }

  double value() const noexcept {
    return empty() ? -std::numeric_limits<double>::infinity() : max_ + std::log(sum_);
  }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

}  // namespace genreason
