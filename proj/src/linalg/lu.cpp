#include "infsup/linalg/lu.hpp"

#include <cmath>
#include <fmt/format.h>
#include <utility>

#include "infsup/linalg/errors.hpp"
#include "infsup/linalg/svd.hpp"
#include "infsup/linalg/triangular.hpp"

namespace infsup {

LuFactors lu_normalized(const Matrix& m) {
  require_square(m, "lu_normalized");
  require_finite(m, "lu_normalized");
  return lu_normalized(m, spectral_norm(m));
}

LuFactors lu_normalized(const Matrix& m, double spectral_scale) {
  require_square(m, "lu_normalized");
  require_finite(m, "lu_normalized");
  const std::size_t n = m.rows();
  const double threshold = kPivotRelTol * spectral_scale;
  Matrix a = m;
  Matrix l = Matrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = a(k, k);
    if (!(std::abs(pivot) > threshold)) {
      throw SingularMinorError(
          k + 1, false,
          fmt::format("lu_normalized: leading minor of size {} is singular (pivot {:.3e})", k + 1,
                      pivot));
    }
    auto rk = a.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto ri = a.row(i);
      const double f = ri[k] / pivot;
      l(i, k) = f;
      ri[k] = 0.0;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= f * rk[j];
    }
  }
  return {std::move(l), std::move(a)};
}

DenseLu::DenseLu(const Matrix& a) : lu_(a), perm_(a.rows()) {
  require_square(a, "DenseLu");
  require_finite(a, "DenseLu");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
    if (lu_(p, k) == 0.0) {
      throw NumericalError(fmt::format("DenseLu: matrix is singular at column {}", k));
    }
    if (p != k) {
      auto rp = lu_.row(p);
      auto rk = lu_.row(k);
      std::swap_ranges(rp.begin(), rp.end(), rk.begin());
      std::swap(perm_[p], perm_[k]);
    }
    auto rk = lu_.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto ri = lu_.row(i);
      const double f = ri[k] / rk[k];
      ri[k] = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= f * rk[j];
    }
  }
}

Vector DenseLu::solve(std::span<const double> b) const {
  if (b.size() != dim()) throw InvalidArgument("DenseLu::solve: dimension mismatch");
  Vector x(dim());
  for (std::size_t i = 0; i < dim(); ++i) x[i] = b[perm_[i]];
  solve_lower(lu_, x, true);
  solve_upper(lu_, x);
  return x;
}

Vector DenseLu::solve_transpose(std::span<const double> b) const {
  if (b.size() != dim()) throw InvalidArgument("DenseLu::solve_transpose: dimension mismatch");
  // P A = L U  =>  A^T = U^T L^T P
  Vector y(b.begin(), b.end());
  solve_upper_transpose(lu_, y);
  solve_lower_transpose(lu_, y, true);
  Vector x(dim());
  for (std::size_t i = 0; i < dim(); ++i) x[perm_[i]] = y[i];
  return x;
}

Matrix DenseLu::solve(const Matrix& b) const {
  if (b.rows() != dim()) throw InvalidArgument("DenseLu::solve: dimension mismatch");
  Matrix x(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) x.set_column(j, solve(b.column(j)));
  return x;
}

Matrix DenseLu::inverse() const { return solve(Matrix::identity(dim())); }

}  // namespace infsup
