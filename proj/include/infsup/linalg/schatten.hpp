#pragma once

#include "infsup/linalg/matrix.hpp"

namespace infsup {

/// Schatten order. Only the orders the truncation estimates need are supported.
enum class SchattenOrder { one, two, four, infinity };

/// Parses 1, 2, 4 or infinity (any non-finite positive value); anything else
/// throws InvalidArgument.
SchattenOrder schatten_order(double p);

double schatten_norm(const Matrix& a, SchattenOrder p);
double schatten_norm(const Matrix& a, double p);

}  // namespace infsup
