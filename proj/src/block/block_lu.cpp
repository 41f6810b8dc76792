#include "infsup/block/block_lu.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <limits>

#include "infsup/linalg/errors.hpp"
#include "infsup/linalg/svd.hpp"

namespace infsup {

BlockLuFactors block_lu(const BlockMatrix& m, std::optional<double> spectral_scale) {
  require_finite(m.data, "block_lu");
  const BlockStructure& bs = m.structure;
  const std::size_t n = bs.size();
  const double scale = spectral_scale ? *spectral_scale : spectral_norm(m.data);
  const double threshold = kBlockSingularRelTol * scale;

  Matrix s = m.data;  // becomes U in place
  Matrix l = Matrix::identity(n);
  for (std::size_t k = 0; k < bs.blocks(); ++k) {
    const std::size_t a = bs.begin(k);
    const std::size_t b = bs.end(k);
    const std::size_t w = b - a;
    const Matrix d = s.block(a, a, w, w);
    const double smin = w == 1 ? std::abs(d(0, 0)) : singular_values(d).smallest();
    if (!(smin > threshold)) {
      throw SingularMinorError(
          k, true,
          fmt::format("block_lu: leading block submatrix M[{}] is singular (sigma_min {:.3e})", k,
                      smin));
    }
    const Matrix dinv = DenseLu(d).inverse();
    std::vector<double> coeff(w);
    for (std::size_t i = b; i < n; ++i) {
      auto si = s.row(i);
      // L(i, block k) = S(i, block k) * D^{-1}
      std::fill(coeff.begin(), coeff.end(), 0.0);
      bool nonzero = false;
      for (std::size_t r = 0; r < w; ++r) {
        const double v = si[a + r];
        if (v == 0.0) continue;
        nonzero = true;
        auto dr = dinv.row(r);
        for (std::size_t c = 0; c < w; ++c) coeff[c] += v * dr[c];
      }
      for (std::size_t c = 0; c < w; ++c) {
        l(i, a + c) = coeff[c];
        si[a + c] = 0.0;
      }
      if (!nonzero) continue;
      for (std::size_t c = 0; c < w; ++c) {
        const double f = coeff[c];
        if (f == 0.0) continue;
        auto sk = s.row(a + c);
        for (std::size_t j = b; j < n; ++j) si[j] -= f * sk[j];
      }
    }
  }
  return {std::move(l), std::move(s), bs};
}

StabilityEstimate stability_estimate(const BlockMatrix& m) {
  StabilityEstimate est;
  est.c_a_hat = spectral_norm(m.data);
  est.gamma_hat = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m.structure.blocks(); ++k) {
    est.gamma_hat = std::min(est.gamma_hat, singular_values(m.leading(k)).smallest());
  }
  est.near_singular = est.gamma_hat < 1e-12 * est.c_a_hat;
  return est;
}

Matrix u_inverse_block_column(const BlockMatrix& m, std::size_t j,
                              std::optional<double> spectral_scale) {
  const BlockStructure& bs = m.structure;
  const std::size_t side = bs.end(j);
  const Matrix lead = m.leading(j);
  const double smin = singular_values(lead).smallest();
  const double scale = spectral_scale ? *spectral_scale : spectral_norm(m.data);
  if (!(smin > kBlockSingularRelTol * scale)) {
    throw SingularMinorError(
        j, true, fmt::format("u_inverse_block_column: M[{}] is singular (sigma_min {:.3e})", j,
                             smin));
  }
  Matrix rhs(side, bs.width(j));
  for (std::size_t c = 0; c < bs.width(j); ++c) rhs(bs.begin(j) + c, c) = 1.0;
  return DenseLu(lead).solve(rhs);
}

std::vector<double> u_inverse_columns(const BlockMatrix& m) {
  std::vector<double> norms;
  norms.reserve(m.structure.blocks());
  const double scale = spectral_norm(m.data);
  for (std::size_t j = 0; j < m.structure.blocks(); ++j) {
    norms.push_back(spectral_norm(u_inverse_block_column(m, j, scale)));
  }
  return norms;
}

BlockUpperSolver::BlockUpperSolver(const Matrix& u, const BlockStructure& bs) : u_(&u), bs_(bs) {
  if (!u.is_square() || u.rows() != bs.size()) {
    throw InvalidArgument("BlockUpperSolver: matrix does not fit the block structure");
  }
  diag_.reserve(bs.blocks());
  for (std::size_t k = 0; k < bs.blocks(); ++k) {
    diag_.emplace_back(u.block(bs.begin(k), bs.begin(k), bs.width(k), bs.width(k)));
  }
}

void BlockUpperSolver::solve(std::span<double> x) const {
  const Matrix& u = *u_;
  const std::size_t n = bs_.size();
  for (std::size_t kk = bs_.blocks(); kk-- > 0;) {
    const std::size_t a = bs_.begin(kk);
    const std::size_t b = bs_.end(kk);
    Vector r(b - a);
    for (std::size_t i = a; i < b; ++i) {
      auto ui = u.row(i);
      double v = x[i];
      for (std::size_t j = b; j < n; ++j) v -= ui[j] * x[j];
      r[i - a] = v;
    }
    const Vector y = diag_[kk].solve(r);
    std::copy(y.begin(), y.end(), x.begin() + static_cast<std::ptrdiff_t>(a));
  }
}

void BlockUpperSolver::solve_transpose(std::span<double> x) const {
  const Matrix& u = *u_;
  const std::size_t n = bs_.size();
  // U^T is block lower triangular: forward substitution, pushing each solved
  // block into the remaining right-hand side.
  for (std::size_t k = 0; k < bs_.blocks(); ++k) {
    const std::size_t a = bs_.begin(k);
    const std::size_t b = bs_.end(k);
    const Vector y = diag_[k].solve_transpose(
        std::span<const double>(x.data() + a, b - a));
    std::copy(y.begin(), y.end(), x.begin() + static_cast<std::ptrdiff_t>(a));
    for (std::size_t i = a; i < b; ++i) {
      auto ui = u.row(i);
      const double xi = x[i];
      if (xi == 0.0) continue;
      for (std::size_t j = b; j < n; ++j) x[j] -= ui[j] * xi;
    }
  }
}

Matrix BlockUpperSolver::inverse() const {
  const std::size_t n = bs_.size();
  // rows of U^{-1} solve U^T x = e_i
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = inv.row(i);
    r[i] = 1.0;
    solve_transpose(r);
  }
  return inv;
}

}  // namespace infsup
