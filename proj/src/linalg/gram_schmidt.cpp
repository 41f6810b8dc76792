#include "infsup/linalg/gram_schmidt.hpp"

#include <cmath>
#include <vector>

#include "infsup/linalg/errors.hpp"

namespace infsup {

namespace {

struct Basis {
  std::vector<Vector> q;
  std::vector<Vector> gq;  // G q, cached so each projection is a plain dot product
};

void project_out(const Basis& b, Vector& w) {
  for (std::size_t k = 0; k < b.q.size(); ++k) axpy(-dot(b.gq[k], w), b.q[k], w);
}

}  // namespace

OrthonormalColumns gram_extend(const Matrix& existing, const Matrix& v, const SpdFactor& g,
                               double rank_tol) {
  const std::size_t n = g.dim();
  if (v.rows() != n || (!existing.empty() && existing.rows() != n)) {
    throw InvalidArgument("gram_orthonormalize: column length does not match the Gram matrix");
  }
  require_finite(v, "gram_orthonormalize");
  const Matrix& gm = g.gram();

  Basis basis;
  for (std::size_t j = 0; j < existing.cols(); ++j) {
    basis.q.push_back(existing.column(j));
    basis.gq.push_back(gm * basis.q.back());
  }
  const std::size_t fixed = basis.q.size();

  for (std::size_t j = 0; j < v.cols(); ++j) {
    Vector w = v.column(j);
    const double original = g.norm(w);
    if (original == 0.0) continue;
    project_out(basis, w);
    project_out(basis, w);
    const double remaining = g.norm(w);
    if (remaining < rank_tol * original) continue;
    for (double& x : w) x /= remaining;
    basis.gq.push_back(gm * w);
    basis.q.push_back(std::move(w));
  }

  OrthonormalColumns out;
  out.rank = basis.q.size() - fixed;
  out.q = Matrix(n, out.rank);
  for (std::size_t j = 0; j < out.rank; ++j) out.q.set_column(j, basis.q[fixed + j]);
  return out;
}

OrthonormalColumns gram_orthonormalize(const Matrix& v, const SpdFactor& g, double rank_tol) {
  return gram_extend(Matrix(), v, g, rank_tol);
}

}  // namespace infsup
