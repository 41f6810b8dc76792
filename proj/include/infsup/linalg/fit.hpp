#pragma once

#include <span>
#include <utility>

namespace infsup {

/// Least-squares slope of log(y) against log(n) over (n, y) samples.
///
/// Throws InvalidArgument for fewer than two samples, nonpositive values, or
/// when all n coincide.
double fit_exponent(std::span<const std::pair<double, double>> samples);

}  // namespace infsup
