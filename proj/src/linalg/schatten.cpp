#include "infsup/linalg/schatten.hpp"

#include <cmath>
#include <fmt/format.h>

#include "infsup/linalg/errors.hpp"
#include "infsup/linalg/svd.hpp"

namespace infsup {

SchattenOrder schatten_order(double p) {
  if (p == 1.0) return SchattenOrder::one;
  if (p == 2.0) return SchattenOrder::two;
  if (p == 4.0) return SchattenOrder::four;
  if (std::isinf(p) && p > 0) return SchattenOrder::infinity;
  throw InvalidArgument(fmt::format("schatten_norm: unsupported order p={}", p));
}

double schatten_norm(const Matrix& a, SchattenOrder p) {
  require_finite(a, "schatten_norm");
  if (p == SchattenOrder::two) return frobenius_norm(a);
  const auto sigma = singular_values(a);
  if (p == SchattenOrder::infinity) return sigma.largest();
  const double top = sigma.largest();
  if (top == 0.0) return 0.0;
  double s = 0.0;
  for (double v : sigma.values) {
    const double r = v / top;
    s += p == SchattenOrder::one ? r : r * r * r * r;
  }
  return p == SchattenOrder::one ? top * s : top * std::sqrt(std::sqrt(s));
}

double schatten_norm(const Matrix& a, double p) { return schatten_norm(a, schatten_order(p)); }

}  // namespace infsup
