#pragma once

#include <span>

#include "infsup/linalg/matrix.hpp"

namespace infsup {

/// Cholesky factorization G = R^T R of a symmetric positive definite matrix.
/// Immutable once built.
class SpdFactor {
 public:
  /// Throws NotSpdError if G is not symmetric to 1e-12 (relative to max|G_ij|)
  /// or not positive definite.
  explicit SpdFactor(const Matrix& g);

  std::size_t dim() const noexcept { return g_.rows(); }
  const Matrix& gram() const noexcept { return g_; }

  Vector solve(std::span<const double> b) const;
  /// G^{-1} B column by column.
  Matrix solve(const Matrix& b) const;
  /// R^{-T} w, so that |whiten(w)| is the dual norm of w.
  Vector whiten(std::span<const double> w) const;
  /// x^T G y
  double inner(std::span<const double> x, std::span<const double> y) const;
  /// sqrt(x^T G x)
  double norm(std::span<const double> x) const;

 private:
  Matrix g_;
  Matrix r_;  // upper triangular
};

/// sqrt(w^T G^{-1} w).
double dual_norm(const SpdFactor& g, std::span<const double> w);

}  // namespace infsup
