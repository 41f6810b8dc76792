#include "infsup/linalg/triangular.hpp"

#include "infsup/linalg/errors.hpp"

namespace infsup {

Matrix triu(const Matrix& m) {
  require_square(m, "triu");
  Matrix t(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) t(i, j) = m(i, j);
  return t;
}

Matrix tril_strict(const Matrix& m) {
  require_square(m, "tril_strict");
  Matrix t(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) t(i, j) = m(i, j);
  return t;
}

void solve_upper(const Matrix& u, std::span<double> b) {
  const std::size_t n = u.rows();
  for (std::size_t ii = n; ii-- > 0;) {
    auto row = u.row(ii);
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= row[j] * b[j];
    b[ii] = s / row[ii];
  }
}

void solve_lower(const Matrix& l, std::span<double> b, bool unit_diagonal) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    auto row = l.row(i);
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= row[j] * b[j];
    b[i] = unit_diagonal ? s : s / row[i];
  }
}

// Transposed solves run column-oriented over the stored rows.
void solve_upper_transpose(const Matrix& u, std::span<double> b) {
  const std::size_t n = u.rows();
  for (std::size_t i = 0; i < n; ++i) {
    auto row = u.row(i);
    b[i] /= row[i];
    const double bi = b[i];
    for (std::size_t j = i + 1; j < n; ++j) b[j] -= row[j] * bi;
  }
}

void solve_lower_transpose(const Matrix& l, std::span<double> b, bool unit_diagonal) {
  const std::size_t n = l.rows();
  for (std::size_t ii = n; ii-- > 0;) {
    auto row = l.row(ii);
    if (!unit_diagonal) b[ii] /= row[ii];
    const double bi = b[ii];
    for (std::size_t j = 0; j < ii; ++j) b[j] -= row[j] * bi;
  }
}

Matrix inverse_upper(const Matrix& u) {
  require_square(u, "inverse_upper");
  const std::size_t n = u.rows();
  // Row i of U^{-1} solves U^T x = e_i; that keeps writes contiguous.
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = inv.row(i);
    r[i] = 1.0;
    // x_j = 0 for j < i, so start the transposed solve at i.
    for (std::size_t k = i; k < n; ++k) {
      auto uk = u.row(k);
      r[k] /= uk[k];
      const double rk = r[k];
      for (std::size_t j = k + 1; j < n; ++j) r[j] -= uk[j] * rk;
    }
  }
  return inv;
}

Matrix inverse_lower(const Matrix& l, bool unit_diagonal) {
  require_square(l, "inverse_lower");
  const std::size_t n = l.rows();
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = inv.row(i);  // row i of L^{-1}: solve L^T x = e_i, x_j = 0 for j > i
    r[i] = 1.0;
    for (std::size_t kk = i + 1; kk-- > 0;) {
      auto lk = l.row(kk);
      if (!unit_diagonal) r[kk] /= lk[kk];
      const double rk = r[kk];
      for (std::size_t j = 0; j < kk; ++j) r[j] -= lk[j] * rk;
    }
  }
  return inv;
}

}  // namespace infsup
