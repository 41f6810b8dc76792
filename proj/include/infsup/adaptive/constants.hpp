#pragma once

#include <span>

namespace infsup {

struct ReductionConstants {
  double kappa = 0.0;
  double c_est = 0.0;
  double c_mon = 0.0;
  /// Some step has zero distance but a growing estimator, so no finite c_est
  /// exists for any scanned kappa.
  bool unbounded = false;
};

/// Fits eta_{l+1}^2 <= kappa eta_l^2 + c_est d_l^2 and eta_{l+k}^2 <= c_mon eta_l^2
/// along a trace. kappa is scanned over 0.01, 0.02, ..., 0.99; for each value
/// c_est is the smallest feasible constant, and the smallest kappa attaining
/// the least c_est is kept. distances[l] = ||u_{l+1} - u_l||_X.
///
/// Throws InvalidArgument for fewer than two estimators or a distance count
/// other than etas.size() - 1.
ReductionConstants measure_reduction_constants(std::span<const double> etas,
                                               std::span<const double> distances);

}  // namespace infsup
