#pragma once

#include <cstddef>
#include <optional>

#include "infsup/block/block_structure.hpp"

namespace infsup {

/// k-th truncated power: block column j holds rows 0..n_{j+1}-1 of
/// (I - A[j] A[j]^T)^k restricted to block column j; everything below the
/// block diagonal is zero. Throws InvalidArgument for k = 0.
BlockMatrix a_star_direct(const BlockMatrix& a, std::size_t k);

/// Same quantity through the recursion
///   A*^1 = I - U_b(A U_b(A^T)),  A*^k = A*^{k-1} - U_b(A U_b(A^T A*^{k-1})).
BlockMatrix a_star_recursive(const BlockMatrix& a, std::size_t k);

struct NeumannOptions {
  double tol = 1e-12;
  std::size_t k_max = 500;
  /// Replaces the default scaling gamma_hat^2 / C_hat^4.
  std::optional<double> alpha;
};

struct NeumannResult {
  Matrix u_inverse;
  double alpha = 0.0;
  /// max_j ||I - alpha M[j] M[j]^T||_inf, the per-step contraction.
  double contraction = 0.0;
  std::size_t terms = 0;
  /// Spectral norm of the last A* power added.
  double last_term_norm = 0.0;
  /// False when k_max ran out before the term norm dropped below tol.
  bool converged = false;
};

/// U^{-1} = alpha U_b(M^T (I + sum_{m>=1} A*^m)) with A = sqrt(alpha) M.
///
/// Throws NoContractionError when the contraction factor is >= 1 - 1e-12.
NeumannResult u_inverse_neumann(const BlockMatrix& m, const NeumannOptions& opts = {});

}  // namespace infsup
