#include "infsup/linalg/svd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "infsup/linalg/errors.hpp"

namespace infsup {

namespace {

constexpr double kJacobiTol = 1e-15;
constexpr int kMaxSweeps = 80;

// Columns of the (tall) working matrix stored contiguously.
std::vector<double> tall_columns(const Matrix& a, std::size_t& m, std::size_t& n) {
  const bool flip = a.rows() < a.cols();
  m = flip ? a.cols() : a.rows();
  n = flip ? a.rows() : a.cols();
  std::vector<double> w(m * n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      // column index c, row index r of the tall matrix
      const std::size_t c = flip ? i : j;
      const std::size_t r = flip ? j : i;
      w[c * m + r] = a(i, j);
    }
  return w;
}

}  // namespace

SingularSpectrum singular_values(const Matrix& a) {
  require_finite(a, "singular_values");
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> w = tall_columns(a, m, n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      double* wp = w.data() + p * m;
      for (std::size_t q = p + 1; q < n; ++q) {
        double* wq = w.data() + q * m;
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += wp[i] * wp[i];
          beta += wq[i] * wq[i];
          gamma += wp[i] * wq[i];
        }
        if (gamma == 0.0 || std::abs(gamma) <= kJacobiTol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double x = wp[i];
          const double y = wq[i];
          wp[i] = c * x - s * y;
          wq[i] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }

  SingularSpectrum out;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = norm2(std::span<const double>(w.data() + j * m, m));
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

PowerIterationResult power_spectral_norm(const LinearOperator& op,
                                         const PowerIterationOptions& opts) {
  PowerIterationResult res;
  if (op.rows == 0 || op.cols == 0) {
    res.converged = true;
    return res;
  }
  // Deterministic start with components in every direction.
  Vector x(op.cols);
  for (std::size_t i = 0; i < op.cols; ++i) {
    x[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  }
  {
    const double nx = norm2(x);
    for (double& v : x) v /= nx;
  }
  Vector y(op.rows);
  double sigma = 0.0;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    std::fill(y.begin(), y.end(), 0.0);
    op.apply(x, y);
    const double estimate = norm2(y);
    res.iterations = it;
    if (estimate == 0.0) {
      res.value = 0.0;
      res.converged = true;
      return res;
    }
    std::fill(x.begin(), x.end(), 0.0);
    op.apply_transpose(y, x);
    const double nx = norm2(x);
    if (!std::isfinite(nx)) throw NumericalError("power_spectral_norm: iterate diverged");
    for (double& v : x) v /= nx;
    const bool done = std::abs(estimate - sigma) <= opts.rel_tol * estimate;
    sigma = estimate;
    if (done) {
      res.converged = true;
      break;
    }
  }
  res.value = sigma;
  return res;
}

double spectral_norm(const Matrix& a) {
  require_finite(a, "spectral_norm");
  if (std::min(a.rows(), a.cols()) <= kFullSpectrumLimit) return singular_values(a).largest();
  LinearOperator op{a.rows(), a.cols(),
                    [&a](std::span<const double> x, std::span<double> y) {
                      for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
                    },
                    [&a](std::span<const double> x, std::span<double> y) {
                      for (std::size_t i = 0; i < a.rows(); ++i) axpy(x[i], a.row(i), y);
                    }};
  return power_spectral_norm(op).value;
}

}  // namespace infsup
