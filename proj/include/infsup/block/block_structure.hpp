#pragma once

#include <cstddef>
#include <vector>

#include "infsup/linalg/matrix.hpp"

namespace infsup {

/// Boundaries 0 = n_0 < n_1 < ... < n_m splitting an index range into m blocks.
class BlockStructure {
 public:
  /// Throws InvalidArgument unless boundaries start at 0, increase strictly
  /// and describe at least one block.
  explicit BlockStructure(std::vector<std::size_t> boundaries);

  /// Blocks of width `block_size`; n must be a multiple of it.
  static BlockStructure uniform(std::size_t n, std::size_t block_size);
  static BlockStructure unit(std::size_t n) { return uniform(n, 1); }
  /// One block covering everything.
  static BlockStructure single(std::size_t n);

  std::size_t blocks() const noexcept { return b_.size() - 1; }
  std::size_t size() const noexcept { return b_.back(); }
  std::size_t begin(std::size_t j) const { return b_.at(j); }
  std::size_t end(std::size_t j) const { return b_.at(j + 1); }
  std::size_t width(std::size_t j) const { return end(j) - begin(j); }
  /// Block index containing scalar index i.
  std::size_t block_of(std::size_t i) const;
  const std::vector<std::size_t>& boundaries() const noexcept { return b_; }

  friend bool operator==(const BlockStructure&, const BlockStructure&) = default;

 private:
  std::vector<std::size_t> b_;
};

/// Square matrix together with a block partition of its index range.
struct BlockMatrix {
  BlockMatrix(Matrix data, BlockStructure structure);

  /// Leading principal submatrix through block k (side n_{k+1}).
  Matrix leading(std::size_t k) const { return data.leading(structure.end(k)); }
  /// Block (i, j).
  Matrix block(std::size_t i, std::size_t j) const;

  Matrix data;
  BlockStructure structure;
};

/// Keeps blocks (i, j) with i <= j, zeroes the rest.
Matrix block_triu(const Matrix& m, const BlockStructure& bs);
BlockMatrix block_triu(const BlockMatrix& m);

}  // namespace infsup
