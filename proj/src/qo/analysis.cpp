#include "infsup/qo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "infsup/linalg/errors.hpp"
#include "infsup/linalg/svd.hpp"

namespace infsup {

BlockMatrix assemble_m(const SpaceHierarchy& h, const HierarchicalBasis& b) {
  if (b.basis_x.rows() != h.form.cols() || b.basis_y.rows() != h.form.rows() ||
      b.basis_x.cols() != b.basis_y.cols()) {
    throw InvalidArgument("assemble_m: basis does not match the hierarchy");
  }
  return BlockMatrix(transpose_multiply(b.basis_y, h.form * b.basis_x), b.structure);
}

Vector assemble_f(const SpaceHierarchy& h, const HierarchicalBasis& b) {
  if (b.basis_y.rows() != h.rhs.size()) {
    throw InvalidArgument("assemble_f: basis does not match the right-hand side");
  }
  return transpose_multiply(b.basis_y, h.rhs);
}

std::vector<Vector> galerkin_sequence(const BlockMatrix& m, std::span<const double> f) {
  const BlockStructure& bs = m.structure;
  if (f.size() != bs.size()) throw InvalidArgument("galerkin_sequence: F has the wrong length");
  const double scale = spectral_norm(m.data);
  std::vector<Vector> out;
  for (std::size_t k = 0; k < bs.blocks(); ++k) {
    const Matrix mk = m.leading(k);
    const double smin = singular_values(mk).smallest();
    if (!(smin > kBlockSingularRelTol * scale)) {
      throw SingularMinorError(
          k, true, fmt::format("galerkin_sequence: M[{}] is singular (sigma_min {:.3e})", k, smin));
    }
    out.push_back(DenseLu(mk).solve(f.subspan(0, bs.end(k))));
  }
  return out;
}

std::vector<Vector> galerkin_sequence(const SpaceHierarchy& h, const HierarchicalBasis& b) {
  return galerkin_sequence(assemble_m(h, b), assemble_f(h, b));
}

namespace {

std::vector<double> prefix_sigma_min(const BlockMatrix& m) {
  std::vector<double> s;
  for (std::size_t k = 0; k < m.structure.blocks(); ++k) {
    s.push_back(singular_values(m.leading(k)).smallest());
  }
  return s;
}

}  // namespace

QoBound qo_bound(const BlockMatrix& m, std::optional<double> c_a, std::optional<double> gamma) {
  QoBound out;
  out.c_a_hat = c_a ? *c_a : spectral_norm(m.data);
  if (gamma) {
    out.gamma_hat = *gamma;
  } else {
    const auto s = prefix_sigma_min(m);
    out.gamma_hat = *std::min_element(s.begin(), s.end());
  }
  const BlockStructure& bs = m.structure;
  const BlockLuFactors f = block_lu(m, spectral_norm(m.data));
  out.u_norm = spectral_norm(f.u);
  const Matrix u_inv = BlockUpperSolver(f.u, bs).inverse();
  const std::size_t first = bs.blocks() > 1 ? 1 : 0;
  for (std::size_t k = first; k < bs.blocks(); ++k) {
    // block column k of U^{-1} is zero below row n_{k+1}
    const Matrix col = u_inv.block(0, bs.begin(k), bs.end(k), bs.width(k));
    out.u_inv_col_max = std::max(out.u_inv_col_max, spectral_norm(col));
  }
  const double ratio = out.c_a_hat / out.gamma_hat;
  out.bound = ratio * ratio * out.u_norm * out.u_norm * out.u_inv_col_max * out.u_inv_col_max;
  return out;
}

std::vector<QoEmpiricalEntry> qo_empirical(std::span<const Vector> lambdas,
                                           std::span<const double> reference) {
  const std::size_t levels = lambdas.size();
  const std::size_t dim = reference.size();
  auto diff_sq = [dim](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double x = (i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0);
      s += x * x;
    }
    return s;
  };
  for (const Vector& l : lambdas) {
    if (l.size() > dim) throw InvalidArgument("qo_empirical: reference shorter than a solution");
  }
  std::vector<double> step(levels > 0 ? levels - 1 : 0);
  for (std::size_t k = 0; k + 1 < levels; ++k) step[k] = diff_sq(lambdas[k + 1], lambdas[k]);

  std::vector<QoEmpiricalEntry> out;
  for (std::size_t l = 0; l + 1 < levels; ++l) {
    const double denom = diff_sq(reference, lambdas[l]);
    double num = 0.0;
    for (std::size_t n = 0; l + n + 1 < levels; ++n) {
      num += step[l + n];
      QoEmpiricalEntry e{l, n, 0.0, denom == 0.0};
      if (!e.zero_denominator) e.ratio = num / denom;
      out.push_back(e);
    }
  }
  return out;
}

std::vector<QoBoundEntry> qo_bound_table(const BlockMatrix& m) {
  const BlockStructure& bs = m.structure;
  const std::size_t levels = bs.blocks();
  const double c_a = spectral_norm(m.data);
  const std::vector<double> smin = prefix_sigma_min(m);
  std::vector<QoBoundEntry> out;
  for (std::size_t l = 0; l + 1 < levels; ++l) {
    for (std::size_t n = 0; l + n + 1 < levels; ++n) {
      std::vector<std::size_t> bounds{0};
      for (std::size_t j = l; j <= l + n + 1; ++j) bounds.push_back(bs.end(j));
      const std::size_t dim = bounds.back();
      const BlockMatrix sub(m.data.leading(dim), BlockStructure(std::move(bounds)));
      const double gamma = *std::min_element(smin.begin() + static_cast<std::ptrdiff_t>(l),
                                             smin.begin() + static_cast<std::ptrdiff_t>(l + n + 2));
      out.push_back({l, n, qo_bound(sub, c_a, gamma)});
    }
  }
  return out;
}

QoReport analyze_hierarchy(const SpaceHierarchy& h, std::optional<ReductionInputs> constants,
                           double rank_tol) {
  const HierarchicalBasis basis = build_hierarchical_basis(h, rank_tol);
  const BlockMatrix m = assemble_m(h, basis);
  const Vector f = assemble_f(h, basis);
  const std::vector<Vector> lambdas = galerkin_sequence(m, f);

  QoReport r;
  r.levels = basis.structure.blocks();
  for (std::size_t j = 0; j < r.levels; ++j) r.dims.push_back(basis.structure.end(j));
  const QoBound full = qo_bound(m);
  r.c_a_hat = full.c_a_hat;
  r.gamma_hat = full.gamma_hat;
  r.u_norm = full.u_norm;
  r.u_inv_col_max = full.u_inv_col_max;
  r.bound_full = full.bound;
  r.bounds = qo_bound_table(m);
  r.empirical = qo_empirical(lambdas, lambdas.back());

  const std::size_t n_count = r.levels > 1 ? r.levels - 1 : 0;
  r.c_bound.assign(n_count, 0.0);
  r.c_empirical.assign(n_count, 0.0);
  for (std::size_t i = 0; i < r.bounds.size(); ++i) {
    const QoBoundEntry& b = r.bounds[i];
    const QoEmpiricalEntry& e = r.empirical[i];  // both tables share the (l, N) order
    r.c_bound[b.n] = std::max(r.c_bound[b.n], b.bound.bound);
    if (e.zero_denominator) continue;
    r.c_empirical[e.n] = std::max(r.c_empirical[e.n], e.ratio);
    if (e.ratio > b.bound.bound * (1.0 + 1e-6)) ++r.violations;
  }
  if (constants && n_count > 0) {
    r.convergence = linear_convergence_params(r.c_bound, constants->kappa, constants->c_est,
                                              constants->c_rel, constants->c_mon, n_count);
  }
  return r;
}

}  // namespace infsup
