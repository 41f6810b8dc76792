#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace infsup {

/// Nonnegative element indicators eta_T with the cached sum of squares.
class Indicators {
 public:
  Indicators() = default;
  /// Throws InvalidInput on negative or non-finite values.
  explicit Indicators(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double total_sq() const noexcept { return total_sq_; }
  double estimator() const;

 private:
  std::vector<double> values_;
  double total_sq_ = 0.0;
};

struct MarkResult {
  /// Ascending element indices; empty only when every indicator is zero.
  std::vector<std::size_t> marked;
  double achieved_fraction = 0.0;

  bool all_zero() const noexcept { return marked.empty(); }
};

/// Minimal-cardinality set with sum of squares >= theta * total: indicators
/// are sorted descending (ties by ascending index) and the shortest prefix
/// that reaches the threshold is taken. Throws InvalidArgument unless
/// 0 < theta < 1. All-zero indicators yield an empty result.
MarkResult dorfler_mark(const Indicators& ind, double theta);

/// (1 + c_stab^2 c_dlr^2)^{-1}; reported for information, never enforced.
double theta_star(double c_stab, double c_dlr);

}  // namespace infsup
