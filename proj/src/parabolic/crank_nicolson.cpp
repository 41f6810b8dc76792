#include "infsup/parabolic/crank_nicolson.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "infsup/linalg/errors.hpp"

namespace infsup {

namespace {

Matrix step_matrix(const ParabolicSystem& sys, double h) {
  return sys.data().mass + (0.5 * h) * sys.data().op;
}

DenseLu factor_step(const ParabolicSystem& sys, double h) {
  try {
    return DenseLu(step_matrix(sys, h));
  } catch (const NumericalError& e) {
    throw StepSolveError(fmt::format("step matrix for h = {} is singular: {}", h, e.what()));
  }
}

}  // namespace

const DenseLu& StepCache::left(double h) {
  std::lock_guard lock(mutex_);
  auto it = cache_.find(h);
  if (it == cache_.end()) {
    it = cache_.emplace(h, std::make_unique<DenseLu>(factor_step(*sys_, h))).first;
  }
  return *it->second;
}

Vector project_initial(const ParabolicSystem& sys, std::span<const double> moments,
                       double first_step, StepCache* cache) {
  if (!(first_step > 0.0)) throw InvalidArgument("project_initial: step must be positive");
  if (moments.size() != sys.dim_v()) throw InvalidArgument("project_initial: size mismatch");
  if (cache) return cache->left(first_step).solve(moments);
  return factor_step(sys, first_step).solve(moments);
}

Vector initial_value(const ParabolicSystem& sys, const TimeMesh& mesh, StepCache* cache) {
  if (sys.data().initial_mode == InitialValue::fixed) return sys.data().u0;
  return project_initial(sys, sys.data().u0_moments, mesh.length(0), cache);
}

TimeAffineFunction cn_solve_from(const ParabolicSystem& sys, const TimeMesh& mesh,
                                 const Vector& u_start, StepCache* cache) {
  if (mesh.t_end() != sys.t_end() || !mesh.refines(sys.data().initial_mesh)) {
    throw InvalidArgument("cn_solve: mesh does not refine the initial mesh");
  }
  if (u_start.size() != sys.dim_v()) throw InvalidArgument("cn_solve: initial value size");
  const Matrix& mass = sys.data().mass;
  const Matrix& op = sys.data().op;
  std::unique_ptr<StepCache> own;
  if (!cache) {
    own = std::make_unique<StepCache>(sys);
    cache = own.get();
  }
  TimeAffineFunction u{mesh, {}};
  u.nodes.reserve(mesh.nodes());
  u.nodes.push_back(u_start);
  for (std::size_t i = 0; i < mesh.intervals(); ++i) {
    const double h = mesh.length(i);
    const Vector& prev = u.nodes.back();
    Vector rhs = mass * prev;
    axpy(-0.5 * h, op * prev, rhs);
    if (sys.has_load()) axpy(h, sys.load(mesh.midpoint(i)), rhs);
    Vector next = cache->left(h).solve(rhs);
    if (!all_finite(next)) {
      throw StepSolveError(fmt::format("cn_solve: non-finite state after step {}", i));
    }
    u.nodes.push_back(std::move(next));
  }
  return u;
}

TimeAffineFunction cn_solve(const ParabolicSystem& sys, const TimeMesh& mesh, StepCache* cache) {
  return cn_solve_from(sys, mesh, initial_value(sys, mesh, cache), cache);
}

double galerkin_residual_check(const ParabolicSystem& sys, const TimeAffineFunction& u) {
  const Matrix& mass = sys.data().mass;
  const Matrix& op = sys.data().op;
  double worst = 0.0;
  for (std::size_t i = 0; i < u.mesh.intervals(); ++i) {
    const Vector f = sys.load(u.mesh.midpoint(i));
    const Vector md = mass * u.slope(i);
    const Vector au = op * (0.5 * (u.nodes[i] + u.nodes[i + 1]));
    const double scale = norm2(f) + norm2(md) + norm2(au);
    if (scale == 0.0) continue;
    worst = std::max(worst, norm2(f - md - au) / scale);
  }
  return worst;
}

Indicators residual_indicators(const ParabolicSystem& sys, const TimeAffineFunction& u) {
  const Matrix& op = sys.data().op;
  std::vector<double> eta(u.mesh.intervals());
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const double h = u.mesh.length(i);
    Vector rho = sys.load_slope(u.mesh[i], u.mesh[i + 1]);
    axpy(-1.0, op * u.slope(i), rho);
    eta[i] = std::pow(h, 1.5) * dual_norm(sys.gram_factor(), rho);
  }
  return Indicators(std::move(eta));
}

double xnorm_diff(const ParabolicSystem& sys, const TimeAffineFunction& u,
                  const TimeAffineFunction& v) {
  const std::size_t n = sys.dim_v();
  for (const auto* f : {&u, &v}) {
    if (f->nodes.size() != f->mesh.nodes() || f->nodes.front().size() != n) {
      throw InvalidArgument("xnorm_diff: function does not belong to this system");
    }
  }
  const TimeMesh mesh = TimeMesh::merge(u.mesh, v.mesh);
  const Matrix& g = sys.data().gram_v;
  const Matrix& mass = sys.data().mass;
  double total = 0.0;
  Vector a = u.at(mesh[0]) - v.at(mesh[0]);
  Vector ga = g * a;
  for (std::size_t i = 0; i < mesh.intervals(); ++i) {
    const double h = mesh.length(i);
    Vector b = u.at(mesh[i + 1]) - v.at(mesh[i + 1]);
    Vector gb = g * b;
    total += h / 3.0 * (dot(a, ga) + dot(a, gb) + dot(b, gb));
    const double dn = dual_norm(sys.gram_factor(), mass * (b - a));
    total += dn * dn / h;
    a = std::move(b);
    ga = std::move(gb);
  }
  return std::sqrt(std::max(0.0, total));
}

double inverse_inequality_constant(const ParabolicSystem& sys) {
  const std::size_t n = sys.dim_v();
  const Matrix& g = sys.data().gram_v;
  const Matrix& mass = sys.data().mass;
  // alternating signs excite the highest frequencies first
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + 1e-3 * i);
  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    const Vector gx = g * x;
    const double rq = dot(x, gx) / dot(x, mass * x);
    x = sys.mass_factor().solve(gx);
    const double scale = sys.mass_factor().norm(x);
    for (double& v : x) v /= scale;
    const bool done = it > 0 && std::abs(rq - lambda) <= 1e-8 * rq;
    lambda = rq;
    if (done) break;
  }
  return lambda;
}

CflRatio cfl_ratio(double c_inv, const TimeMesh& mesh) {
  return {c_inv, 1.0 / (c_inv * mesh.max_step())};
}

CflRatio cfl_ratio(const ParabolicSystem& sys, const TimeMesh& mesh) {
  return cfl_ratio(inverse_inequality_constant(sys), mesh);
}

}  // namespace infsup
