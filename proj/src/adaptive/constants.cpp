#include "infsup/adaptive/constants.hpp"

#include <algorithm>
#include <limits>

#include "infsup/linalg/errors.hpp"

namespace infsup {

ReductionConstants measure_reduction_constants(std::span<const double> etas,
                                               std::span<const double> distances) {
  if (etas.size() < 2) throw InvalidArgument("measure_reduction_constants: need two estimators");
  if (distances.size() + 1 != etas.size()) {
    throw InvalidArgument("measure_reduction_constants: one distance per step expected");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  ReductionConstants out;
  out.c_est = inf;
  for (int step = 1; step <= 99; ++step) {
    const double kappa = step / 100.0;
    double c = 0.0;
    for (std::size_t l = 0; l < distances.size(); ++l) {
      const double excess = etas[l + 1] * etas[l + 1] - kappa * etas[l] * etas[l];
      if (excess <= 0.0) continue;
      const double d2 = distances[l] * distances[l];
      c = d2 == 0.0 ? inf : std::max(c, excess / d2);
    }
    if (c < out.c_est) {
      out.c_est = c;
      out.kappa = kappa;
    }
  }
  if (out.c_est == inf) {
    out.unbounded = true;
    out.kappa = 0.99;
  }

  out.c_mon = 1.0;
  for (std::size_t l = 0; l < etas.size(); ++l) {
    const double base = etas[l] * etas[l];
    for (std::size_t k = l + 1; k < etas.size(); ++k) {
      const double later = etas[k] * etas[k];
      if (base == 0.0) {
        if (later > 0.0) out.c_mon = inf;
        continue;
      }
      out.c_mon = std::max(out.c_mon, later / base);
    }
  }
  return out;
}

}  // namespace infsup
