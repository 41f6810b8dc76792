#include "infsup/adaptive/dorfler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "infsup/linalg/errors.hpp"

namespace infsup {

Indicators::Indicators(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInput("Indicators: values must be finite and nonnegative");
    }
    total_sq_ += v * v;
  }
}

double Indicators::estimator() const { return std::sqrt(total_sq_); }

MarkResult dorfler_mark(const Indicators& ind, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw InvalidArgument("dorfler_mark: theta must lie in (0, 1)");
  }
  const auto& v = ind.values();
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&v](std::size_t a, std::size_t b) { return v[a] > v[b]; });

  // Summing the total in the same order makes the full prefix equal it exactly.
  double total = 0.0;
  for (std::size_t i : order) total += v[i] * v[i];
  MarkResult res;
  if (total == 0.0) return res;

  const double target = theta * total;
  double acc = 0.0;
  for (std::size_t i : order) {
    acc += v[i] * v[i];
    res.marked.push_back(i);
    if (acc >= target) break;
  }
  res.achieved_fraction = acc / total;
  std::sort(res.marked.begin(), res.marked.end());
  return res;
}

double theta_star(double c_stab, double c_dlr) {
  return 1.0 / (1.0 + c_stab * c_stab * c_dlr * c_dlr);
}

}  // namespace infsup
