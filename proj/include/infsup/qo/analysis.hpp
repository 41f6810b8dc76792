#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "infsup/block/block_lu.hpp"
#include "infsup/qo/hierarchy.hpp"
#include "infsup/qo/linear_convergence.hpp"

namespace infsup {

/// M = basis_y^T form basis_x with the basis block structure.
BlockMatrix assemble_m(const SpaceHierarchy& h, const HierarchicalBasis& b);
/// F = basis_y^T rhs.
Vector assemble_f(const SpaceHierarchy& h, const HierarchicalBasis& b);

/// lambda(k) solving M[k] lambda(k) = F[k], one per level. Throws
/// SingularMinorError naming k when M[k] is singular.
std::vector<Vector> galerkin_sequence(const BlockMatrix& m, std::span<const double> f);
std::vector<Vector> galerkin_sequence(const SpaceHierarchy& h, const HierarchicalBasis& b);

struct QoBound {
  double c_a_hat = 0.0;
  double gamma_hat = 0.0;
  double u_norm = 0.0;
  /// max ||U^{-1}(:, k)|| over k >= 1 (over all k when there is one block).
  double u_inv_col_max = 0.0;
  double bound = 0.0;
};

/// (c_a/gamma)^2 ||U||^2 max_k ||U^{-1}(:, k)||^2. c_a and gamma are measured
/// on m unless given.
QoBound qo_bound(const BlockMatrix& m, std::optional<double> c_a = {},
                 std::optional<double> gamma = {});

struct QoEmpiricalEntry {
  std::size_t level = 0;  // l
  std::size_t n = 0;      // N
  /// sum_{k=l}^{l+N} |lambda(k+1)-lambda(k)|^2 / |ref - lambda(l)|^2
  double ratio = 0.0;
  /// Set when the denominator vanishes; ratio is then left at 0.
  bool zero_denominator = false;
};

/// Empirical quasi-orthogonality ratios for all (l, N) with l+N+1 < levels,
/// using zero-padded coefficient vectors in the orthonormal basis.
std::vector<QoEmpiricalEntry> qo_empirical(std::span<const Vector> lambdas,
                                           std::span<const double> reference);

struct QoBoundEntry {
  std::size_t level = 0;
  std::size_t n = 0;
  QoBound bound;
};

/// LU bound for each (l, N): the hierarchy restricted to levels l..l+N+1.
/// c_a is taken from the full matrix so that it also bounds the form on the
/// reference level.
std::vector<QoBoundEntry> qo_bound_table(const BlockMatrix& m);

struct QoReport {
  std::size_t levels = 0;
  std::vector<std::size_t> dims;
  double c_a_hat = 0.0;
  double gamma_hat = 0.0;
  double u_norm = 0.0;
  double u_inv_col_max = 0.0;
  double bound_full = 0.0;
  std::vector<QoBoundEntry> bounds;
  std::vector<QoEmpiricalEntry> empirical;
  /// Per N: max over l of the bound and of the empirical ratio.
  std::vector<double> c_bound;
  std::vector<double> c_empirical;
  /// Pairs where the empirical ratio exceeds the bound by more than 1e-6.
  std::size_t violations = 0;
  std::optional<LinearConvergence> convergence;
};

struct ReductionInputs {
  double kappa = 0.5;
  double c_est = 1.0;
  double c_rel = 1.0;
  double c_mon = 1.0;
};

/// Full pipeline: basis, M, Galerkin solutions, bound and empirical tables,
/// and (when `constants` is given) D(N), N0, q_log, q from the per-N bound.
QoReport analyze_hierarchy(const SpaceHierarchy& h, std::optional<ReductionInputs> constants,
                           double rank_tol = kDefaultRankTol);

}  // namespace infsup
