#pragma once

#include <cstddef>
#include <vector>

#include "infsup/block/block_structure.hpp"
#include "infsup/linalg/gram_schmidt.hpp"
#include "infsup/linalg/matrix.hpp"

namespace infsup {

/// Nested discrete trial/test spaces inside finite-dimensional ambient spaces.
///
/// X and Y may have different ambient dimensions: gram_x is n_x x n_x,
/// gram_y is n_y x n_y, form is n_y x n_x with a(u, v) = v^T form u, and
/// f(v) = rhs^T v. Level j is spanned by the columns of x_spaces[j] (n_x rows)
/// and y_spaces[j] (n_y rows).
struct SpaceHierarchy {
  Matrix gram_x;
  Matrix gram_y;
  Matrix form;
  Vector rhs;
  std::vector<Matrix> x_spaces;
  std::vector<Matrix> y_spaces;

  std::size_t levels() const noexcept { return x_spaces.size(); }
};

/// Shape checks only; throws InvalidArgument.
void validate_shapes(const SpaceHierarchy& h);

/// Projection residual tolerance used for the nesting check.
inline constexpr double kNestingTol = 1e-8;

/// Column j of basis_x belongs to block b when structure.begin(b) <= j <
/// structure.end(b); block b spans the X-orthogonal complement of level b-1
/// in level b. The same holds for basis_y with respect to gram_y.
struct HierarchicalBasis {
  Matrix basis_x;
  Matrix basis_y;
  BlockStructure structure;
};

/// Throws NestingViolation when a level is not contained in the next one
/// (projection residual above kNestingTol) or a complement loses rank, and
/// InvalidArgument when X and Y dimensions differ on some level or a level
/// does not grow.
HierarchicalBasis build_hierarchical_basis(const SpaceHierarchy& h,
                                           double rank_tol = kDefaultRankTol);

/// Restriction to levels [first, first + count): the basis of the restricted
/// hierarchy is the leading part of the full one with blocks 0..first merged.
HierarchicalBasis restrict_levels(const HierarchicalBasis& b, std::size_t first,
                                  std::size_t count);

}  // namespace infsup
