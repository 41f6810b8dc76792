#include "infsup/linalg/fit.hpp"

#include <cmath>

#include "infsup/linalg/errors.hpp"

namespace infsup {

double fit_exponent(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 2) throw InvalidArgument("fit_exponent: need at least two samples");
  double mx = 0.0, my = 0.0;
  for (const auto& [n, y] : samples) {
    if (!(n > 0.0) || !(y > 0.0) || !std::isfinite(n) || !std::isfinite(y)) {
      throw InvalidArgument("fit_exponent: samples must be positive and finite");
    }
    mx += std::log(n);
    my += std::log(y);
  }
  const double count = static_cast<double>(samples.size());
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, y] : samples) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0.0) throw InvalidArgument("fit_exponent: abscissae are all equal");
  return sxy / sxx;
}

}  // namespace infsup
