// Shared helpers for the unit and acceptance tests: Eigen conversions used as
// independent oracles and the seeded random block-matrix corpus.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "infsup/block/block_structure.hpp"
#include "infsup/linalg/matrix.hpp"

namespace infsup::testing {

inline Eigen::MatrixXd to_eigen(const Matrix& a) {
  Eigen::MatrixXd e(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e(i, j) = a(i, j);
  return e;
}

inline Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix a(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) a(i, j) = e(i, j);
  return a;
}

inline Eigen::VectorXd to_eigen(const Vector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Singular values from Eigen's two-sided Jacobi SVD, descending.
inline Eigen::VectorXd oracle_singular_values(const Eigen::MatrixXd& a) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues();
}

inline double oracle_spectral(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  return oracle_singular_values(a)(0);
}

inline double oracle_sigma_min(const Eigen::MatrixXd& a) {
  const Eigen::VectorXd s = oracle_singular_values(a);
  return s(s.size() - 1);
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                            double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix a(rows, cols);
  for (double& v : a.entries()) v = u(rng);
  return a;
}

/// Random partition of n into `blocks` nonempty parts.
inline BlockStructure random_structure(std::mt19937_64& rng, std::size_t n, std::size_t blocks) {
  std::vector<std::size_t> cuts(n - 1);
  for (std::size_t i = 0; i < cuts.size(); ++i) cuts[i] = i + 1;
  std::shuffle(cuts.begin(), cuts.end(), rng);
  std::vector<std::size_t> b(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(blocks - 1));
  b.push_back(0);
  b.push_back(n);
  std::sort(b.begin(), b.end());
  return BlockStructure(b);
}

struct CorpusEntry {
  BlockMatrix m;
  double gamma;  // min_k sigma_min(M[k]), Eigen oracle
  double c_a;    // ||M||
};

/// `count` block matrices M = I + 0.5 R (R uniform in [-1, 1]), n in [6, 12],
/// 2 to 4 blocks, kept only when gamma/C >= 0.2 by the Eigen oracle.
inline std::vector<CorpusEntry> block_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(6, 12);
  std::uniform_int_distribution<std::size_t> nblocks(2, 4);
  std::vector<CorpusEntry> out;
  while (out.size() < count) {
    const std::size_t n = dim(rng);
    const BlockStructure bs = random_structure(rng, n, nblocks(rng));
    Matrix a = random_matrix(rng, n, n);
    a *= 0.5;
    a += Matrix::identity(n);
    const Eigen::MatrixXd e = to_eigen(a);
    const double c = oracle_spectral(e);
    double g = c;
    for (std::size_t k = 0; k < bs.blocks(); ++k) {
      const auto s = static_cast<Eigen::Index>(bs.end(k));
      g = std::min(g, oracle_sigma_min(e.topLeftCorner(s, s)));
    }
    if (g / c < 0.2) continue;
    out.push_back({BlockMatrix(std::move(a), bs), g, c});
  }
  return out;
}

/// Relative spectral distance ||a - b|| / max(||b||, tiny).
inline double rel_spectral(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double nb = oracle_spectral(b);
  return oracle_spectral(a - b) / (nb > 0.0 ? nb : 1.0);
}

}  // namespace infsup::testing
