#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "infsup/block/block_structure.hpp"
#include "infsup/linalg/lu.hpp"

namespace infsup {

struct BlockLuFactors {
  Matrix l;  // identity diagonal blocks, zero above the block diagonal
  Matrix u;  // zero below the block diagonal
  BlockStructure structure;
};

/// Relative threshold below which a diagonal Schur block counts as singular.
inline constexpr double kBlockSingularRelTol = 1e-12;

/// Normalized block-LU factorization by block forward elimination.
///
/// Each eliminated diagonal block (the Schur complement of the preceding
/// ones) is inverted with a dense pivoted solve. If its smallest singular
/// value is at most kBlockSingularRelTol * ||M||_inf, a SingularMinorError
/// with the 0-based block index is thrown. `spectral_scale` supplies ||M||_inf
/// when the caller already knows it.
BlockLuFactors block_lu(const BlockMatrix& m, std::optional<double> spectral_scale = {});

struct StabilityEstimate {
  double c_a_hat = 0.0;    // ||M||_inf
  double gamma_hat = 0.0;  // min_k sigma_min(M[k])
  bool near_singular = false;
};

/// Costs one SVD per block prefix; intended for moderate sizes.
StabilityEstimate stability_estimate(const BlockMatrix& m);

/// Block column j of U^{-1} restricted to its nonzero rows 0..n_{j+1}-1,
/// obtained as the last block column of M[j]^{-1}.
/// `spectral_scale` is ||M||_inf for the singularity test; computed if absent.
Matrix u_inverse_block_column(const BlockMatrix& m, std::size_t j,
                              std::optional<double> spectral_scale = {});
/// Spectral norms ||U^{-1}(:, j)|| for j = 0..m-1, without forming U^{-1}.
std::vector<double> u_inverse_columns(const BlockMatrix& m);

/// Solves with a block upper-triangular matrix by block back substitution.
/// Keeps a reference to `u`, which must outlive the solver.
class BlockUpperSolver {
 public:
  BlockUpperSolver(const Matrix& u, const BlockStructure& bs);
  BlockUpperSolver(Matrix&&, const BlockStructure&) = delete;

  /// U x = b in place.
  void solve(std::span<double> b) const;
  /// U^T x = b in place.
  void solve_transpose(std::span<double> b) const;
  Matrix inverse() const;

 private:
  const Matrix* u_;
  BlockStructure bs_;
  std::vector<DenseLu> diag_;
};

}  // namespace infsup
