#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "infsup/linalg/matrix.hpp"

namespace infsup {

/// M_ij = 1/(j-i+1) for j >= i and -1/(i-j+1) below the diagonal.
Matrix hilbert_modified(std::size_t n);

using MatrixFamily = std::function<Matrix(std::size_t)>;

struct GrowthRow {
  std::size_t n = 0;
  double l_norm = 0.0;
  double u_norm = 0.0;
  double l_inv_norm = 0.0;
  double u_inv_norm = 0.0;
  double m_norm = 0.0;
  /// False if any power iteration hit its cap.
  bool converged = true;

  double l_ratio() const { return l_norm / m_norm; }
  double u_ratio() const { return u_norm / m_norm; }
  double l_inv_ratio() const { return l_inv_norm / m_norm; }
  double u_inv_ratio() const { return u_inv_norm / m_norm; }
};

struct GrowthExponents {
  double l = 0.0;
  double u = 0.0;
  double l_inv = 0.0;
  double u_inv = 0.0;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  /// Fitted exponents of the normalized norms; empty for fewer than two sizes.
  std::optional<GrowthExponents> exponents;
};

/// Block-LU factor norms per size, all spectral, normalized by ||M||_inf in
/// the exponents. Dense spectra up to size 512, power iteration (with
/// triangular solves for the inverses) beyond.
GrowthReport growth_experiment(const MatrixFamily& family, std::span<const std::size_t> sizes,
                               std::size_t block_size);

}  // namespace infsup
