#include "infsup/block/growth.hpp"

#include "infsup/block/block_lu.hpp"
#include "infsup/linalg/errors.hpp"
#include "infsup/linalg/fit.hpp"
#include "infsup/linalg/svd.hpp"
#include "infsup/linalg/triangular.hpp"

namespace infsup {

Matrix hilbert_modified(std::size_t n) {
  if (n == 0) throw InvalidArgument("hilbert_modified: n must be at least 1");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = j >= i ? 1.0 / static_cast<double>(j - i + 1)
                       : -1.0 / static_cast<double>(i - j + 1);
    }
  return m;
}

namespace {

LinearOperator dense_operator(const Matrix& a) {
  return {a.rows(), a.cols(),
          [&a](std::span<const double> x, std::span<double> y) {
            for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
          },
          [&a](std::span<const double> x, std::span<double> y) {
            for (std::size_t i = 0; i < a.rows(); ++i) axpy(x[i], a.row(i), y);
          }};
}

double power_norm(const LinearOperator& op, bool& converged) {
  const PowerIterationResult r = power_spectral_norm(op);
  converged = converged && r.converged;
  return r.value;
}

GrowthRow measure(std::size_t n, const Matrix& m, std::size_t block_size) {
  GrowthRow row;
  row.n = n;
  const BlockStructure bs = BlockStructure::uniform(n, block_size);
  const bool dense = n <= kFullSpectrumLimit;

  row.m_norm = dense ? spectral_norm(m) : power_norm(dense_operator(m), row.converged);
  const BlockLuFactors f = block_lu(BlockMatrix(m, bs), row.m_norm);
  const BlockUpperSolver u_solver(f.u, bs);

  if (dense) {
    row.l_norm = spectral_norm(f.l);
    row.u_norm = spectral_norm(f.u);
    row.l_inv_norm = spectral_norm(inverse_lower(f.l, true));
    row.u_inv_norm = spectral_norm(u_solver.inverse());
    return row;
  }

  row.l_norm = power_norm(dense_operator(f.l), row.converged);
  row.u_norm = power_norm(dense_operator(f.u), row.converged);
  // L has identity diagonal blocks, so it is unit lower triangular entrywise.
  const Matrix& l = f.l;
  const LinearOperator l_inv{n, n,
                             [&l](std::span<const double> x, std::span<double> y) {
                               std::copy(x.begin(), x.end(), y.begin());
                               solve_lower(l, y, true);
                             },
                             [&l](std::span<const double> x, std::span<double> y) {
                               std::copy(x.begin(), x.end(), y.begin());
                               solve_lower_transpose(l, y, true);
                             }};
  row.l_inv_norm = power_norm(l_inv, row.converged);
  const LinearOperator u_inv{n, n,
                             [&u_solver](std::span<const double> x, std::span<double> y) {
                               std::copy(x.begin(), x.end(), y.begin());
                               u_solver.solve(y);
                             },
                             [&u_solver](std::span<const double> x, std::span<double> y) {
                               std::copy(x.begin(), x.end(), y.begin());
                               u_solver.solve_transpose(y);
                             }};
  row.u_inv_norm = power_norm(u_inv, row.converged);
  return row;
}

}  // namespace

GrowthReport growth_experiment(const MatrixFamily& family, std::span<const std::size_t> sizes,
                               std::size_t block_size) {
  if (sizes.empty()) throw InvalidArgument("growth_experiment: no sizes given");
  if (block_size == 0) throw InvalidArgument("growth_experiment: block size must be positive");
  for (std::size_t n : sizes) {
    if (n == 0 || n % block_size != 0) {
      throw InvalidArgument("growth_experiment: every size must be a positive multiple of the "
                            "block size");
    }
  }
  GrowthReport report;
  for (std::size_t n : sizes) {
    const Matrix m = family(n);
    if (m.rows() != n || m.cols() != n) {
      throw InvalidArgument("growth_experiment: family returned a matrix of the wrong size");
    }
    report.rows.push_back(measure(n, m, block_size));
  }
  if (report.rows.size() >= 2) {
    std::vector<std::pair<double, double>> l, u, li, ui;
    for (const GrowthRow& r : report.rows) {
      const double n = static_cast<double>(r.n);
      l.emplace_back(n, r.l_ratio());
      u.emplace_back(n, r.u_ratio());
      li.emplace_back(n, r.l_inv_ratio());
      ui.emplace_back(n, r.u_inv_ratio());
    }
    report.exponents = GrowthExponents{fit_exponent(l), fit_exponent(u), fit_exponent(li),
                                       fit_exponent(ui)};
  }
  return report;
}

}  // namespace infsup
