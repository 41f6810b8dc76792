#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace infsup {

struct LinearConvergence {
  /// D(1), ..., D(n_max).
  std::vector<double> d_of_n;
  /// Smallest N0 with q_log(N0) < 0, if any.
  std::optional<std::size_t> n0;
  /// q_log at N0, or at n_max when no N0 exists.
  double q_log = 0.0;
  std::optional<double> q;
  std::optional<double> c_lin;
};

/// D(N) = 1 + (kappa + c_est C(N-1) c_rel^2) / (1 - kappa) for N = 1..n_max,
/// where c_of_n[i] = C(i); needs c_of_n.size() >= n_max.
/// Throws InvalidArgument for kappa outside (0, 1) or nonpositive constants.
LinearConvergence linear_convergence_params(std::span<const double> c_of_n, double kappa,
                                            double c_est, double c_rel, double c_mon,
                                            std::size_t n_max);

/// Same evaluation starting from D(1..n) directly.
LinearConvergence linear_convergence_from_d(std::span<const double> d_of_n, double c_mon);

/// Lazy variant for long horizons: D(N) is evaluated on demand for
/// N = 1..n_max, the scan stops at N0 and d_of_n is left empty.
LinearConvergence linear_convergence_from_d(const std::function<double(std::size_t)>& d_of_n,
                                            double c_mon, std::size_t n_max);

}  // namespace infsup
