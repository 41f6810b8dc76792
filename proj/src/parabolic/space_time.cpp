#include "infsup/parabolic/space_time.hpp"

#include <random>

#include "infsup/adaptive/adaptive_loop.hpp"
#include "infsup/linalg/errors.hpp"
#include "infsup/parabolic/heat.hpp"

namespace infsup {

namespace {

void add_block(Matrix& m, std::size_t r, std::size_t c, const Matrix& b, double s) {
  for (std::size_t i = 0; i < b.rows(); ++i) {
    auto dst = m.row(r + i);
    auto src = b.row(i);
    for (std::size_t j = 0; j < b.cols(); ++j) dst[c + j] += s * src[j];
  }
}

// Hat functions of `coarse` evaluated at the nodes of `fine`.
Matrix hat_prolongation(const TimeMesh& fine, const TimeMesh& coarse) {
  Matrix p(fine.nodes(), coarse.nodes());
  std::size_t j = 0;
  for (std::size_t i = 0; i < fine.nodes(); ++i) {
    const double t = fine[i];
    while (j + 1 < coarse.intervals() && t > coarse[j + 1]) ++j;
    const double s = (t - coarse[j]) / coarse.length(j);
    p(i, j) += 1.0 - s;
    p(i, j + 1) += s;
  }
  return p;
}

// Indicator of the coarse interval containing each fine interval.
Matrix constant_prolongation(const TimeMesh& fine, const TimeMesh& coarse) {
  Matrix p(fine.intervals(), coarse.intervals());
  std::size_t j = 0;
  for (std::size_t i = 0; i < fine.intervals(); ++i) {
    const double mid = fine.midpoint(i);
    while (mid > coarse[j + 1]) ++j;
    p(i, j) = 1.0;
  }
  return p;
}

}  // namespace

SpaceHierarchy build_space_time_hierarchy(const ParabolicSystem& sys,
                                          std::span<const TimeMesh> meshes,
                                          const Vector& u_start) {
  if (meshes.empty()) throw InvalidArgument("space-time hierarchy: no meshes");
  if (u_start.size() != sys.dim_v()) throw InvalidArgument("space-time hierarchy: u_start size");
  for (std::size_t k = 1; k < meshes.size(); ++k) {
    if (!meshes[k].refines(meshes[k - 1])) {
      throw NestingViolation("space-time hierarchy: meshes are not nested");
    }
  }
  const TimeMesh& fine = meshes.back();
  const std::size_t d = sys.dim_v();
  const std::size_t nt = fine.intervals();
  const std::size_t nx = (nt + 1) * d;
  const std::size_t ny = (nt + 1) * d;
  const std::size_t phi = nt * d;
  const Matrix& mass = sys.data().mass;
  const Matrix& op = sys.data().op;
  const Matrix& g = sys.data().gram_v;
  const Matrix k_dual = transpose_multiply(mass, sys.gram_factor().solve(mass));

  SpaceHierarchy h;
  h.form = Matrix(ny, nx);
  h.gram_x = Matrix(nx, nx);
  h.gram_y = Matrix(ny, ny);
  h.rhs = Vector(ny, 0.0);
  for (std::size_t i = 0; i < nt; ++i) {
    const double len = fine.length(i);
    const std::size_t a = i * d;
    const std::size_t b = (i + 1) * d;
    add_block(h.form, i * d, a, mass, -1.0);
    add_block(h.form, i * d, a, op, 0.5 * len);
    add_block(h.form, i * d, b, mass, 1.0);
    add_block(h.form, i * d, b, op, 0.5 * len);
    const Vector f = sys.load(fine.midpoint(i));
    for (std::size_t r = 0; r < d; ++r) h.rhs[i * d + r] = len * f[r];

    add_block(h.gram_x, a, a, g, len / 3.0);
    add_block(h.gram_x, b, b, g, len / 3.0);
    add_block(h.gram_x, a, b, g, len / 6.0);
    add_block(h.gram_x, b, a, g, len / 6.0);
    add_block(h.gram_x, a, a, k_dual, 1.0 / len);
    add_block(h.gram_x, b, b, k_dual, 1.0 / len);
    add_block(h.gram_x, a, b, k_dual, -1.0 / len);
    add_block(h.gram_x, b, a, k_dual, -1.0 / len);

    add_block(h.gram_y, i * d, i * d, g, len);
  }
  add_block(h.form, phi, 0, mass, 1.0);
  add_block(h.gram_y, phi, phi, mass, 1.0);
  const Vector mu0 = mass * u_start;
  for (std::size_t r = 0; r < d; ++r) h.rhs[phi + r] = mu0[r];

  // K_dual is only symmetric up to rounding; symmetrize the assembled Gram.
  h.gram_x = 0.5 * (h.gram_x + transpose(h.gram_x));

  const Matrix eye = Matrix::identity(d);
  for (const TimeMesh& coarse : meshes) {
    h.x_spaces.push_back(kron(hat_prolongation(fine, coarse), eye));
    const Matrix pc = kron(constant_prolongation(fine, coarse), eye);
    Matrix y(ny, pc.cols() + d);
    y.set_block(0, 0, pc);
    y.set_block(phi, pc.cols(), eye);
    h.y_spaces.push_back(std::move(y));
  }
  return h;
}

namespace {

// Adaptive driver over a given system (the initial mode is whatever sys uses).
struct FixedProblem {
  using Mesh = TimeMesh;
  using Solution = TimeAffineFunction;
  const ParabolicSystem* sys;
  Solution solve(const Mesh& m) const { return cn_solve(*sys, m); }
  Indicators estimate(const Mesh&, const Solution& u) const {
    return residual_indicators(*sys, u);
  }
  Mesh refine(const Mesh& m, std::span<const std::size_t> marked) const {
    return m.bisect(marked);
  }
  std::size_t element_count(const Mesh& m) const { return m.intervals(); }
};

}  // namespace

std::vector<TimeMesh> adaptive_meshes(const ParabolicSystem& sys, double theta,
                                      std::size_t levels) {
  if (levels == 0) throw InvalidArgument("adaptive_meshes: need at least one level");
  StopCriteria stop;
  stop.max_iters = levels;
  const auto trace = run_adaptive(FixedProblem{&sys}, sys.data().initial_mesh, theta, stop);
  if (trace.failure) throw StepSolveError(*trace.failure);
  std::vector<TimeMesh> out;
  for (const auto& s : trace.steps) out.push_back(s.mesh);
  return out;
}

SpaceHierarchy heat_hierarchy(std::size_t n_space, std::size_t levels, double theta) {
  HeatOptions opts;
  opts.initial_mode = InitialValue::fixed;
  const ParabolicSystem sys(build_heat_1d(n_space, opts));
  const std::vector<TimeMesh> meshes = adaptive_meshes(sys, theta, levels);
  return build_space_time_hierarchy(sys, meshes, sys.data().u0);
}

SpaceHierarchy symmetric_surrogate(const SpaceHierarchy& h, std::uint64_t seed) {
  SpaceHierarchy s;
  s.gram_x = h.gram_x;
  s.gram_y = h.gram_x;
  s.form = h.gram_x;
  s.x_spaces = h.x_spaces;
  s.y_spaces = h.x_spaces;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  s.rhs.resize(h.gram_x.rows());
  for (double& v : s.rhs) v = normal(rng);
  return s;
}

TimeAffineFunction ambient_to_function(const TimeMesh& finest, std::span<const double> coeffs,
                                       std::size_t dim_v) {
  if (coeffs.size() != finest.nodes() * dim_v) {
    throw InvalidArgument("ambient_to_function: coefficient count does not match");
  }
  TimeAffineFunction f{finest, {}};
  for (std::size_t p = 0; p < finest.nodes(); ++p) {
    f.nodes.emplace_back(coeffs.begin() + static_cast<std::ptrdiff_t>(p * dim_v),
                         coeffs.begin() + static_cast<std::ptrdiff_t>((p + 1) * dim_v));
  }
  return f;
}

}  // namespace infsup
