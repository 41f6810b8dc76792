#pragma once

#include <cstddef>
#include <span>

#include "infsup/linalg/matrix.hpp"

namespace infsup {

struct LuFactors {
  Matrix l;  // unit lower triangular
  Matrix u;  // upper triangular
};

/// Relative pivot threshold of lu_normalized, scaled by the spectral norm.
inline constexpr double kPivotRelTol = 1e-14;

/// M = LU with L_ii = 1, no pivoting.
///
/// Throws SingularMinorError carrying the 1-based size j of the first leading
/// minor whose pivot falls below kPivotRelTol * ||M||_inf.
LuFactors lu_normalized(const Matrix& m);
/// Same, with the caller supplying ||M||_inf (avoids recomputing it).
LuFactors lu_normalized(const Matrix& m, double spectral_scale);

/// General dense solver: LU with partial (row) pivoting.
class DenseLu {
 public:
  /// Throws NumericalError when a pivot column is entirely zero.
  explicit DenseLu(const Matrix& a);

  std::size_t dim() const noexcept { return lu_.rows(); }
  Vector solve(std::span<const double> b) const;
  /// Solves A^T x = b.
  Vector solve_transpose(std::span<const double> b) const;
  /// A^{-1} B, column by column.
  Matrix solve(const Matrix& b) const;
  Matrix inverse() const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

}  // namespace infsup
