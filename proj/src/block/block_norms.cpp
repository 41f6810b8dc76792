#include "infsup/block/block_norms.hpp"

#include <cmath>
#include <random>

#include "infsup/linalg/errors.hpp"
#include "infsup/linalg/svd.hpp"

namespace infsup {

double bsnorm_2(const Matrix& a, const BlockStructure& bs) {
  if (a.cols() != bs.size()) throw InvalidArgument("bsnorm_2: column count does not match");
  double s = 0.0;
  for (std::size_t j = 0; j < bs.blocks(); ++j) {
    const double top = spectral_norm(a.block(0, bs.begin(j), a.rows(), bs.width(j)));
    s += top * top;
  }
  return std::sqrt(s);
}

double bsnorm_sample_lower(const Matrix& a, const BlockStructure& bs, SchattenOrder p,
                           std::size_t samples, std::uint64_t seed) {
  if (a.cols() != bs.size()) {
    throw InvalidArgument("bsnorm_sample_lower: column count does not match");
  }
  if (samples == 0) throw InvalidArgument("bsnorm_sample_lower: need at least one sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const std::size_t m = bs.blocks();
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    Matrix x(bs.size(), m);
    for (std::size_t j = 0; j < m; ++j) {
      Vector col(bs.width(j));
      double nrm = 0.0;
      while (nrm == 0.0) {
        for (double& v : col) v = normal(rng);
        nrm = norm2(col);
      }
      for (std::size_t r = 0; r < col.size(); ++r) x(bs.begin(j) + r, j) = col[r] / nrm;
    }
    best = std::max(best, schatten_norm(a * x, p));
  }
  return best;
}

}  // namespace infsup
