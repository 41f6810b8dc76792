#include "infsup/block/a_star.hpp"

#include <cmath>
#include <fmt/format.h>

#include "infsup/block/block_lu.hpp"
#include "infsup/linalg/errors.hpp"
#include "infsup/linalg/svd.hpp"

namespace infsup {

namespace {

void require_positive_power(std::size_t k, const char* what) {
  if (k == 0) throw InvalidArgument(fmt::format("{}: power k must be at least 1", what));
}

// One recursion step: next = prev - U_b(A U_b(A^T prev)).
Matrix a_star_step(const Matrix& a, const BlockStructure& bs, const Matrix& prev) {
  Matrix inner = block_triu(transpose_multiply(a, prev), bs);
  return prev - block_triu(a * inner, bs);
}

}  // namespace

BlockMatrix a_star_direct(const BlockMatrix& a, std::size_t k) {
  require_positive_power(k, "a_star_direct");
  const BlockStructure& bs = a.structure;
  Matrix out(bs.size(), bs.size());
  for (std::size_t j = 0; j < bs.blocks(); ++j) {
    const std::size_t side = bs.end(j);
    const Matrix aj = a.data.leading(side);
    const Matrix step = Matrix::identity(side) - aj * transpose(aj);
    Matrix power = step;
    for (std::size_t p = 1; p < k; ++p) power = power * step;
    out.set_block(0, bs.begin(j), power.block(0, bs.begin(j), side, bs.width(j)));
  }
  return BlockMatrix(std::move(out), bs);
}

BlockMatrix a_star_recursive(const BlockMatrix& a, std::size_t k) {
  require_positive_power(k, "a_star_recursive");
  Matrix cur = Matrix::identity(a.structure.size());
  for (std::size_t p = 0; p < k; ++p) cur = a_star_step(a.data, a.structure, cur);
  return BlockMatrix(std::move(cur), a.structure);
}

NeumannResult u_inverse_neumann(const BlockMatrix& m, const NeumannOptions& opts) {
  const BlockStructure& bs = m.structure;
  const std::size_t n = bs.size();
  NeumannResult res;
  if (opts.alpha) {
    if (!(*opts.alpha > 0.0)) throw InvalidArgument("u_inverse_neumann: alpha must be positive");
    res.alpha = *opts.alpha;
  } else {
    const StabilityEstimate est = stability_estimate(m);
    if (!(est.gamma_hat > 0.0)) {
      throw NoContractionError("u_inverse_neumann: a leading block submatrix is singular");
    }
    res.alpha = est.gamma_hat * est.gamma_hat / std::pow(est.c_a_hat, 4);
  }

  for (std::size_t j = 0; j < bs.blocks(); ++j) {
    const Matrix mj = m.leading(j);
    const Matrix step = Matrix::identity(mj.rows()) - res.alpha * (mj * transpose(mj));
    res.contraction = std::max(res.contraction, spectral_norm(step));
  }
  if (res.contraction >= 1.0 - 1e-12) {
    throw NoContractionError(
        fmt::format("u_inverse_neumann: contraction factor {:.15g} is not below 1", res.contraction));
  }

  const Matrix a = std::sqrt(res.alpha) * m.data;
  const double root_n = std::sqrt(static_cast<double>(n));
  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (std::size_t k = 1; k <= opts.k_max; ++k) {
    term = a_star_step(a, bs, term);
    sum += term;
    res.terms = k;
    // spectral >= frobenius / sqrt(n): only pay for the SVD near the end
    if (frobenius_norm(term) < root_n * opts.tol) {
      res.last_term_norm = spectral_norm(term);
      if (res.last_term_norm < opts.tol) {
        res.converged = true;
        break;
      }
    }
  }
  if (!res.converged && res.terms > 0) res.last_term_norm = spectral_norm(term);
  res.u_inverse = block_triu(res.alpha * transpose_multiply(m.data, sum), bs);
  return res;
}

}  // namespace infsup
