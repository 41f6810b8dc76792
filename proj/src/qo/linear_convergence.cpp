#include "infsup/qo/linear_convergence.hpp"

#include <cmath>

#include "infsup/linalg/errors.hpp"

namespace infsup {

LinearConvergence linear_convergence_params(std::span<const double> c_of_n, double kappa,
                                            double c_est, double c_rel, double c_mon,
                                            std::size_t n_max) {
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw InvalidArgument("linear_convergence_params: kappa must lie in (0, 1)");
  }
  if (!(c_est > 0.0 && c_rel > 0.0 && c_mon > 0.0)) {
    throw InvalidArgument("linear_convergence_params: constants must be positive");
  }
  if (c_of_n.size() < n_max) {
    throw InvalidArgument("linear_convergence_params: need C(0..n_max-1)");
  }
  std::vector<double> d(n_max);
  for (std::size_t k = 1; k <= n_max; ++k) {
    d[k - 1] = 1.0 + (kappa + c_est * c_of_n[k - 1] * c_rel * c_rel) / (1.0 - kappa);
  }
  return linear_convergence_from_d(d, c_mon);
}

LinearConvergence linear_convergence_from_d(const std::function<double(std::size_t)>& d_of_n,
                                            double c_mon, std::size_t n_max) {
  if (!(c_mon > 0.0)) throw InvalidArgument("linear_convergence_from_d: c_mon must be positive");
  LinearConvergence out;
  double inv_sum = 0.0;
  for (std::size_t k = 1; k <= n_max; ++k) {
    const double d = d_of_n(k);
    if (!(d > 0.0)) throw InvalidArgument("linear_convergence_from_d: D(N) must be positive");
    inv_sum += 1.0 / d;
    out.q_log = std::log(d) - inv_sum;
    if (out.q_log < 0.0) {
      out.n0 = k;
      out.q = std::exp(out.q_log / static_cast<double>(k));
      out.c_lin = c_mon * std::exp(-out.q_log);
      break;
    }
  }
  return out;
}

LinearConvergence linear_convergence_from_d(std::span<const double> d_of_n, double c_mon) {
  LinearConvergence out = linear_convergence_from_d(
      [d_of_n](std::size_t k) { return d_of_n[k - 1]; }, c_mon, d_of_n.size());
  out.d_of_n.assign(d_of_n.begin(), d_of_n.end());
  return out;
}

}  // namespace infsup
