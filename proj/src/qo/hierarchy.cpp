#include "infsup/qo/hierarchy.hpp"

#include <fmt/format.h>

#include "infsup/linalg/errors.hpp"
#include "infsup/linalg/spd.hpp"

namespace infsup {

void validate_shapes(const SpaceHierarchy& h) {
  const std::size_t nx = h.gram_x.rows();
  const std::size_t ny = h.gram_y.rows();
  if (!h.gram_x.is_square() || !h.gram_y.is_square()) {
    throw InvalidArgument("hierarchy: Gram matrices must be square");
  }
  if (h.form.rows() != ny || h.form.cols() != nx) {
    throw InvalidArgument(fmt::format("hierarchy: form is {}x{}, expected {}x{}", h.form.rows(),
                                      h.form.cols(), ny, nx));
  }
  if (h.rhs.size() != ny) throw InvalidArgument("hierarchy: rhs length does not match Y");
  if (h.x_spaces.empty()) throw InvalidArgument("hierarchy: no levels");
  if (h.x_spaces.size() != h.y_spaces.size()) {
    throw InvalidArgument("hierarchy: X and Y level counts differ");
  }
  for (std::size_t j = 0; j < h.levels(); ++j) {
    if (h.x_spaces[j].rows() != nx || h.y_spaces[j].rows() != ny) {
      throw InvalidArgument(fmt::format("hierarchy: level {} has the wrong ambient size", j));
    }
  }
  require_finite(h.gram_x, "hierarchy gram_x");
  require_finite(h.gram_y, "hierarchy gram_y");
  require_finite(h.form, "hierarchy form");
  if (!all_finite(h.rhs)) throw InvalidInput("hierarchy: rhs has non-finite entries");
}

namespace {

// Largest relative G-residual of the columns of `coarse` after projection onto
// the G-orthonormal columns of `q`.
double nesting_residual(const Matrix& coarse, const Matrix& q, const SpdFactor& g) {
  double worst = 0.0;
  const Matrix gq = g.gram() * q;
  for (std::size_t c = 0; c < coarse.cols(); ++c) {
    Vector v = coarse.column(c);
    const double before = g.norm(v);
    if (before == 0.0) continue;
    const Vector coeff = transpose_multiply(gq, v);
    for (std::size_t k = 0; k < q.cols(); ++k) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= coeff[k] * q(i, k);
    }
    worst = std::max(worst, g.norm(v) / before);
  }
  return worst;
}

struct SideBasis {
  Matrix basis;
  std::vector<std::size_t> ranks;
};

SideBasis build_side(const std::vector<Matrix>& spaces, const SpdFactor& g, double rank_tol,
                     char side) {
  SideBasis out;
  const std::size_t n = g.dim();
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < spaces.size(); ++j) {
    const OrthonormalColumns own = gram_orthonormalize(spaces[j], g, rank_tol);
    if (j > 0) {
      const double r = nesting_residual(spaces[j - 1], own.q, g);
      if (r > kNestingTol) {
        throw NestingViolation(fmt::format(
            "{}-space of level {} is not contained in level {} (residual {:.3e})", side, j - 1, j, r));
      }
    }
    Matrix current = Matrix::from_columns(cols, n);
    const OrthonormalColumns added = gram_extend(current, spaces[j], g, rank_tol);
    const std::size_t expected = own.rank - (j == 0 ? 0 : out.ranks.back());
    if (own.rank <= (j == 0 ? 0 : out.ranks.back())) {
      throw InvalidArgument(fmt::format("{}-space of level {} does not grow (rank {})", side, j,
                                        own.rank));
    }
    if (added.rank != expected) {
      throw NestingViolation(fmt::format(
          "{}-space complement of level {} has rank {}, expected {}", side, j, added.rank,
          expected));
    }
    for (std::size_t c = 0; c < added.rank; ++c) cols.push_back(added.q.column(c));
    out.ranks.push_back(own.rank);
  }
  out.basis = Matrix::from_columns(cols, n);
  return out;
}

}  // namespace

HierarchicalBasis build_hierarchical_basis(const SpaceHierarchy& h, double rank_tol) {
  validate_shapes(h);
  const SpdFactor gx(h.gram_x);
  const SpdFactor gy(h.gram_y);
  SideBasis x = build_side(h.x_spaces, gx, rank_tol, 'X');
  SideBasis y = build_side(h.y_spaces, gy, rank_tol, 'Y');
  for (std::size_t j = 0; j < h.levels(); ++j) {
    if (x.ranks[j] != y.ranks[j]) {
      throw InvalidArgument(fmt::format("level {}: dim X = {} but dim Y = {}", j, x.ranks[j],
                                        y.ranks[j]));
    }
  }
  std::vector<std::size_t> bounds{0};
  bounds.insert(bounds.end(), x.ranks.begin(), x.ranks.end());
  return {std::move(x.basis), std::move(y.basis), BlockStructure(std::move(bounds))};
}

HierarchicalBasis restrict_levels(const HierarchicalBasis& b, std::size_t first,
                                  std::size_t count) {
  const BlockStructure& bs = b.structure;
  if (count == 0 || first + count > bs.blocks()) {
    throw InvalidArgument("restrict_levels: level range out of bounds");
  }
  std::vector<std::size_t> bounds{0};
  for (std::size_t j = first; j < first + count; ++j) bounds.push_back(bs.end(j));
  const std::size_t dim = bounds.back();
  return {b.basis_x.block(0, 0, b.basis_x.rows(), dim),
          b.basis_y.block(0, 0, b.basis_y.rows(), dim), BlockStructure(std::move(bounds))};
}

}  // namespace infsup
