#include "infsup/parabolic/heat.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <fmt/format.h>
#include <stdexcept>

#include "infsup/linalg/errors.hpp"
#include "infsup/linalg/fit.hpp"

namespace infsup {

namespace {

struct Stencil1d {
  Matrix mass;
  Matrix stiff;
};

Stencil1d p1_matrices(std::size_t n) {
  const std::size_t d = n - 1;
  const double h = 1.0 / static_cast<double>(n);
  Stencil1d s{Matrix(d, d), Matrix(d, d)};
  for (std::size_t i = 0; i < d; ++i) {
    s.mass(i, i) = 4.0 * h / 6.0;
    s.stiff(i, i) = 2.0 / h;
    if (i + 1 < d) {
      s.mass(i, i + 1) = s.mass(i + 1, i) = h / 6.0;
      s.stiff(i, i + 1) = s.stiff(i + 1, i) = -1.0 / h;
    }
  }
  return s;
}

SemiDiscreteSystem finish(Matrix mass, Matrix op, double moment, const HeatOptions& opts) {
  SemiDiscreteSystem sys;
  const std::size_t d = mass.rows();
  sys.gram_v = opts.seminorm ? op : op + mass;
  sys.mass = std::move(mass);
  sys.op = std::move(op);
  sys.initial_mesh = TimeMesh({0.0, 1.0});
  sys.u0_moments = Vector(d, moment);
  sys.initial_mode = InitialValue::fixed;
  sys.u0 = Vector(d, 0.0);
  // u0 = projection with the one step of the initial mesh
  const ParabolicSystem tmp(sys);
  sys.u0 = project_initial(tmp, sys.u0_moments, sys.initial_mesh.length(0));
  sys.initial_mode = opts.initial_mode;
  return sys;
}

}  // namespace

SemiDiscreteSystem build_heat_1d(std::size_t n_space, const HeatOptions& opts) {
  if (n_space < 2) throw InvalidArgument("build_heat_1d: need at least 2 elements");
  Stencil1d s = p1_matrices(n_space);
  return finish(std::move(s.mass), std::move(s.stiff), 1.0 / static_cast<double>(n_space), opts);
}

SemiDiscreteSystem build_heat_2d_tensor(std::size_t n_side, const HeatOptions& opts) {
  if (n_side < 2) throw InvalidArgument("build_heat_2d_tensor: need at least 2 elements per side");
  const Stencil1d s = p1_matrices(n_side);
  const double h = 1.0 / static_cast<double>(n_side);
  Matrix op = kron(s.stiff, s.mass) + kron(s.mass, s.stiff);
  return finish(kron(s.mass, s.mass), std::move(op), h * h, opts);
}

HeatProblem::HeatProblem(SemiDiscreteSystem sys)
    : sys_(std::make_shared<const ParabolicSystem>(std::move(sys))),
      cache_(std::make_shared<StepCache>(*sys_)) {}

namespace {

std::optional<double> slope_of(const std::vector<HeatRow>& rows, bool use_eta,
                               std::size_t lo, std::size_t hi) {
  std::vector<std::pair<double, double>> pts;
  for (const HeatRow& r : rows) {
    if (r.n_intervals < lo || r.n_intervals > hi) continue;
    const double y = use_eta ? r.eta : r.err_x;
    if (!(y > 0.0)) continue;
    pts.emplace_back(static_cast<double>(r.n_intervals), y);
  }
  if (pts.size() < 2) return std::nullopt;
  return fit_exponent(pts);
}

template <class Trace>
void throw_on_failure(const Trace& t, const char* what) {
  if (t.failure) throw StepSolveError(fmt::format("{} run failed: {}", what, *t.failure));
}

}  // namespace

HeatReport heat_experiment(const HeatConfig& config) {
  if (!(config.theta > 0.0 && config.theta < 1.0)) {
    throw InvalidArgument("heat_experiment: theta must lie in (0, 1)");
  }
  const HeatProblem problem(config.spatial == Spatial::one_d
                                ? build_heat_1d(config.n_space)
                                : build_heat_2d_tensor(config.n_space));
  const ParabolicSystem& sys = problem.system();

  StopCriteria stop;
  stop.max_iters = config.steps_adaptive + 1;
  const auto adaptive = run_adaptive(problem, problem.initial_mesh(), config.theta, stop);
  throw_on_failure(adaptive, "adaptive");
  const auto uniform = run_uniform(problem, problem.initial_mesh(), config.steps_uniform);
  throw_on_failure(uniform, "uniform");

  const TimeMesh ref_mesh = adaptive.steps.back().mesh.bisect_all();
  const TimeAffineFunction reference = problem.solve(ref_mesh);

  HeatReport rep;
  rep.reference_intervals = ref_mesh.intervals();
  rep.c_inv = inverse_inequality_constant(sys);

  auto fill = [&](const auto& trace, std::vector<HeatRow>& rows) {
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      const auto& s = trace.steps[i];
      rows.push_back({i, s.n_elements, s.eta, xnorm_diff(sys, reference, s.solution),
                      cfl_ratio(rep.c_inv, s.mesh).ratio});
      rep.max_galerkin_residual =
          std::max(rep.max_galerkin_residual, galerkin_residual_check(sys, s.solution));
    }
  };
  fill(adaptive, rep.adaptive);
  fill(uniform, rep.uniform);

  rep.adaptive_eta_slope = slope_of(rep.adaptive, true, 0, SIZE_MAX);
  rep.adaptive_err_slope = slope_of(rep.adaptive, false, 0, SIZE_MAX);
  rep.uniform_eta_slope = slope_of(rep.uniform, true, kUniformWindowMin, kUniformWindowMax);
  rep.uniform_err_slope = slope_of(rep.uniform, false, kUniformWindowMin, kUniformWindowMax);

  rep.reliability_min = std::numeric_limits<double>::infinity();
  for (const HeatRow& r : rep.adaptive) {
    if (!(r.eta > 0.0)) continue;
    const double c = r.err_x / r.eta;
    rep.reliability_min = std::min(rep.reliability_min, c);
    rep.reliability_max = std::max(rep.reliability_max, c);
  }

  const TimeMesh& last = adaptive.steps.back().mesh;
  rep.min_step = last.min_step();
  for (std::size_t i = 0; i < last.intervals(); ++i) {
    rep.step_profile.emplace_back(last.midpoint(i), last.length(i));
  }
  // left end of the first interval of minimal length
  for (std::size_t i = 0; i < last.intervals(); ++i) {
    if (last.length(i) == rep.min_step) {
      rep.min_step_location = last[i];
      break;
    }
  }

  if (adaptive.steps.size() >= 2) {
    std::vector<double> dist;
    for (std::size_t i = 0; i + 1 < adaptive.steps.size(); ++i) {
      dist.push_back(xnorm_diff(sys, adaptive.steps[i + 1].solution, adaptive.steps[i].solution));
    }
    rep.reduction = measure_reduction_constants(adaptive.estimators(), dist);
  }
  return rep;
}

}  // namespace infsup
