#include "infsup/linalg/spd.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "infsup/linalg/errors.hpp"
#include "infsup/linalg/triangular.hpp"

namespace infsup {

SpdFactor::SpdFactor(const Matrix& g) : g_(g), r_(g.rows(), g.cols()) {
  require_square(g, "SpdFactor");
  require_finite(g, "SpdFactor");
  const std::size_t n = g.rows();
  const double sym_tol = 1e-12 * max_abs(g);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(g(i, j) - g(j, i)) > sym_tol) {
        throw NotSpdError(fmt::format("SpdFactor: matrix not symmetric at ({}, {})", i, j));
      }
  // Row-oriented upper Cholesky using the upper triangle of g.
  for (std::size_t k = 0; k < n; ++k) {
    double d = g(k, k);
    for (std::size_t p = 0; p < k; ++p) d -= r_(p, k) * r_(p, k);
    if (!(d > 0.0)) {
      throw NotSpdError(fmt::format("SpdFactor: matrix not positive definite (pivot {} = {:.3e})",
                                    k, d));
    }
    const double rkk = std::sqrt(d);
    r_(k, k) = rkk;
    auto rk = r_.row(k);
    for (std::size_t j = k + 1; j < n; ++j) rk[j] = g(k, j);
    for (std::size_t p = 0; p < k; ++p) {
      const double rpk = r_(p, k);
      if (rpk == 0.0) continue;
      auto rp = r_.row(p);
      for (std::size_t j = k + 1; j < n; ++j) rk[j] -= rpk * rp[j];
    }
    for (std::size_t j = k + 1; j < n; ++j) rk[j] /= rkk;
  }
}

Vector SpdFactor::solve(std::span<const double> b) const {
  if (b.size() != dim()) {
    throw InvalidArgument(fmt::format("SpdFactor::solve: size {} != {}", b.size(), dim()));
  }
  Vector x(b.begin(), b.end());
  solve_upper_transpose(r_, x);
  solve_upper(r_, x);
  return x;
}

Matrix SpdFactor::solve(const Matrix& b) const {
  Matrix x(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) x.set_column(j, solve(b.column(j)));
  return x;
}

double SpdFactor::inner(std::span<const double> x, std::span<const double> y) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw InvalidArgument("SpdFactor::inner: dimension mismatch");
  }
  return dot(x, g_ * y);
}

double SpdFactor::norm(std::span<const double> x) const {
  return std::sqrt(std::max(0.0, inner(x, x)));
}

Vector SpdFactor::whiten(std::span<const double> w) const {
  if (w.size() != dim()) {
    throw InvalidArgument(fmt::format("SpdFactor::whiten: size {} != {}", w.size(), dim()));
  }
  Vector y(w.begin(), w.end());
  solve_upper_transpose(r_, y);
  return y;
}

double dual_norm(const SpdFactor& g, std::span<const double> w) {
  if (w.size() != g.dim()) {
    throw InvalidArgument(fmt::format("dual_norm: size {} != {}", w.size(), g.dim()));
  }
  // w^T G^{-1} w = |R^{-T} w|^2
  return norm2(g.whiten(w));
}

}  // namespace infsup
