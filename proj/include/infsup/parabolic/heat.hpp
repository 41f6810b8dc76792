#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infsup/adaptive/adaptive_loop.hpp"
#include "infsup/adaptive/constants.hpp"
#include "infsup/parabolic/crank_nicolson.hpp"

namespace infsup {

struct HeatOptions {
  /// gram_v = stiffness only instead of stiffness + mass.
  bool seminorm = false;
  InitialValue initial_mode = InitialValue::project_per_mesh;
};

/// Heat equation on (0, 1), P1 elements, homogeneous Dirichlet data,
/// n_space elements (n_space - 1 unknowns), f = 0, u(0) = 1, t_end = 1.
/// `u0` is the projection with the single initial step; `u0_moments` are the
/// moments of the constant 1.
SemiDiscreteSystem build_heat_1d(std::size_t n_space, const HeatOptions& opts = {});
/// Tensor-product Q1 version on (0, 1)^2 with n_side elements per side.
SemiDiscreteSystem build_heat_2d_tensor(std::size_t n_side, const HeatOptions& opts = {});

/// Adapter for the adaptive driver: time meshes, Crank-Nicolson solutions,
/// residual indicators, interval bisection.
class HeatProblem {
 public:
  using Mesh = TimeMesh;
  using Solution = TimeAffineFunction;

  explicit HeatProblem(SemiDiscreteSystem sys);

  const ParabolicSystem& system() const noexcept { return *sys_; }
  Mesh initial_mesh() const { return sys_->data().initial_mesh; }

  Solution solve(const Mesh& mesh) const { return cn_solve(*sys_, mesh, cache_.get()); }
  Indicators estimate(const Mesh&, const Solution& u) const {
    return residual_indicators(*sys_, u);
  }
  Mesh refine(const Mesh& mesh, std::span<const std::size_t> marked) const {
    return mesh.bisect(marked);
  }
  std::size_t element_count(const Mesh& mesh) const { return mesh.intervals(); }

 private:
  std::shared_ptr<const ParabolicSystem> sys_;
  std::shared_ptr<StepCache> cache_;
};

static_assert(AdaptiveProblem<HeatProblem>);

enum class Spatial { one_d, two_d };

struct HeatConfig {
  Spatial spatial = Spatial::one_d;
  std::size_t n_space = 64;
  double theta = 0.5;
  std::size_t steps_adaptive = 32;
  std::size_t steps_uniform = 10;
};

struct HeatRow {
  std::size_t iter = 0;
  std::size_t n_intervals = 0;
  double eta = 0.0;
  double err_x = 0.0;
  double cfl_ratio = 0.0;
};

/// Window of interval counts used for the uniform-refinement slope.
inline constexpr std::size_t kUniformWindowMin = 8;
inline constexpr std::size_t kUniformWindowMax = 512;

struct HeatReport {
  std::vector<HeatRow> adaptive;
  std::vector<HeatRow> uniform;
  /// Slopes of eta and err_x against #T; adaptive over the whole trace,
  /// uniform over kUniformWindowMin <= #T <= kUniformWindowMax.
  std::optional<double> adaptive_eta_slope;
  std::optional<double> adaptive_err_slope;
  std::optional<double> uniform_eta_slope;
  std::optional<double> uniform_err_slope;
  /// err_x / eta along the adaptive trace.
  double reliability_min = 0.0;
  double reliability_max = 0.0;
  double c_inv = 0.0;
  std::size_t reference_intervals = 0;
  /// (midpoint, length) of each interval of the final adaptive mesh.
  std::vector<std::pair<double, double>> step_profile;
  double min_step = 0.0;
  double min_step_location = 0.0;
  std::optional<ReductionConstants> reduction;
  double max_galerkin_residual = 0.0;
};

/// Adaptive and uniform runs against a reference solution on the final
/// adaptive mesh refined once more uniformly. Throws on solver failure.
HeatReport heat_experiment(const HeatConfig& config);

}  // namespace infsup
