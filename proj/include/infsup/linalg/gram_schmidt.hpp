#pragma once

#include <cstddef>

#include "infsup/linalg/matrix.hpp"
#include "infsup/linalg/spd.hpp"

namespace infsup {

struct OrthonormalColumns {
  Matrix q;  // G-orthonormal columns
  std::size_t rank = 0;
};

inline constexpr double kDefaultRankTol = 1e-8;

/// Modified Gram-Schmidt in the G inner product with one re-orthogonalization
/// pass. Columns whose G-norm after projection drops below rank_tol times
/// their original G-norm are discarded.
OrthonormalColumns gram_orthonormalize(const Matrix& v, const SpdFactor& g,
                                       double rank_tol = kDefaultRankTol);

/// Orthonormalizes the columns of v against the (already G-orthonormal)
/// columns of `existing` and against each other. Returns only the new columns.
OrthonormalColumns gram_extend(const Matrix& existing, const Matrix& v, const SpdFactor& g,
                               double rank_tol = kDefaultRankTol);

}  // namespace infsup
