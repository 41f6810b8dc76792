#pragma once

#include <cstddef>
#include <cstdint>

#include "infsup/block/block_structure.hpp"
#include "infsup/linalg/schatten.hpp"

namespace infsup {

/// Exact block norm at p = 2: sqrt(sum_j sigma_max(A(:, block j))^2).
double bsnorm_2(const Matrix& a, const BlockStructure& bs);

/// Monte-Carlo lower bound for the block norm of order p: the largest
/// ||A X||_p over `samples` random X with one unit column per block,
/// supported on that block. Deterministic for a fixed seed.
double bsnorm_sample_lower(const Matrix& a, const BlockStructure& bs, SchattenOrder p,
                           std::size_t samples, std::uint64_t seed);

}  // namespace infsup
