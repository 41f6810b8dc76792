#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "infsup/linalg/matrix.hpp"

namespace infsup {

/// Singular values in descending order.
struct SingularSpectrum {
  std::vector<double> values;

  double largest() const { return values.empty() ? 0.0 : values.front(); }
  double smallest() const { return values.empty() ? 0.0 : values.back(); }
};

/// All min(rows, cols) singular values via one-sided Jacobi rotations.
///
/// Throws InvalidInput on non-finite entries.
SingularSpectrum singular_values(const Matrix& a);

/// Matrix-free linear map R^cols -> R^rows together with its transpose.
struct LinearOperator {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::function<void(std::span<const double>, std::span<double>)> apply;
  std::function<void(std::span<const double>, std::span<double>)> apply_transpose;
};

struct PowerIterationOptions {
  double rel_tol = 1e-8;
  std::size_t max_iterations = 10000;
};

struct PowerIterationResult {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest singular value of `op` by power iteration on op^T op.
PowerIterationResult power_spectral_norm(const LinearOperator& op,
                                         const PowerIterationOptions& opts = {});

/// Matrix sizes above which spectral norms switch from the full Jacobi
/// spectrum to power iteration.
inline constexpr std::size_t kFullSpectrumLimit = 512;

/// Largest singular value. Uses the full spectrum for min(rows, cols) <= 512
/// and power iteration beyond that.
double spectral_norm(const Matrix& a);

}  // namespace infsup
