#include "infsup/block/block_structure.hpp"

#include <algorithm>
#include <fmt/format.h>

#include "infsup/linalg/errors.hpp"

namespace infsup {

BlockStructure::BlockStructure(std::vector<std::size_t> boundaries) : b_(std::move(boundaries)) {
  if (b_.size() < 2 || b_.front() != 0) {
    throw InvalidArgument("BlockStructure: boundaries must start at 0 and contain a block");
  }
  for (std::size_t j = 1; j < b_.size(); ++j) {
    if (b_[j] <= b_[j - 1]) {
      throw InvalidArgument(fmt::format("BlockStructure: boundaries not increasing at {}", j));
    }
  }
}

BlockStructure BlockStructure::uniform(std::size_t n, std::size_t block_size) {
  if (block_size == 0 || n == 0 || n % block_size != 0) {
    throw InvalidArgument(
        fmt::format("BlockStructure: size {} is not a positive multiple of {}", n, block_size));
  }
  std::vector<std::size_t> b;
  for (std::size_t k = 0; k <= n; k += block_size) b.push_back(k);
  return BlockStructure(std::move(b));
}

BlockStructure BlockStructure::single(std::size_t n) { return BlockStructure({0, n}); }

std::size_t BlockStructure::block_of(std::size_t i) const {
  if (i >= size()) throw InvalidArgument("BlockStructure::block_of: index out of range");
  return static_cast<std::size_t>(std::upper_bound(b_.begin(), b_.end(), i) - b_.begin()) - 1;
}

BlockMatrix::BlockMatrix(Matrix d, BlockStructure s) : data(std::move(d)), structure(std::move(s)) {
  if (!data.is_square() || data.rows() != structure.size()) {
    throw InvalidArgument(fmt::format("BlockMatrix: {}x{} matrix does not fit structure of size {}",
                                      data.rows(), data.cols(), structure.size()));
  }
}

Matrix BlockMatrix::block(std::size_t i, std::size_t j) const {
  return data.block(structure.begin(i), structure.begin(j), structure.width(i),
                    structure.width(j));
}

Matrix block_triu(const Matrix& m, const BlockStructure& bs) {
  if (!m.is_square() || m.rows() != bs.size()) {
    throw InvalidArgument("block_triu: matrix does not fit the block structure");
  }
  Matrix t(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    // columns from the start of i's block onwards are kept
    const std::size_t c0 = bs.begin(bs.block_of(i));
    auto src = m.row(i);
    std::copy(src.begin() + static_cast<std::ptrdiff_t>(c0), src.end(),
              t.row(i).begin() + static_cast<std::ptrdiff_t>(c0));
  }
  return t;
}

BlockMatrix block_triu(const BlockMatrix& m) {
  return BlockMatrix(block_triu(m.data, m.structure), m.structure);
}

}  // namespace infsup
