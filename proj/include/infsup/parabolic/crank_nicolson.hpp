#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "infsup/adaptive/dorfler.hpp"
#include "infsup/linalg/lu.hpp"
#include "infsup/parabolic/system.hpp"

namespace infsup {

/// Factorizations of mass + h/2 op keyed by the step length h. Adaptive
/// meshes from bisection only produce a handful of distinct lengths.
class StepCache {
 public:
  explicit StepCache(const ParabolicSystem& sys) : sys_(&sys) {}
  const DenseLu& left(double h);

 private:
  const ParabolicSystem* sys_;
  std::mutex mutex_;
  std::map<double, std::unique_ptr<DenseLu>> cache_;
};

/// (mass + h/2 op) u = moments.
Vector project_initial(const ParabolicSystem& sys, std::span<const double> moments,
                       double first_step, StepCache* cache = nullptr);

/// Discrete initial value on `mesh` according to the system's initial mode.
Vector initial_value(const ParabolicSystem& sys, const TimeMesh& mesh,
                     StepCache* cache = nullptr);

/// Crank-Nicolson: (mass + h/2 op) u_{i+1} = (mass - h/2 op) u_i + h F(mid).
/// Throws InvalidArgument if the mesh does not refine the initial mesh and
/// StepSolveError if a step matrix cannot be factored.
TimeAffineFunction cn_solve(const ParabolicSystem& sys, const TimeMesh& mesh,
                            StepCache* cache = nullptr);

/// Same stepping from a given initial value.
TimeAffineFunction cn_solve_from(const ParabolicSystem& sys, const TimeMesh& mesh,
                                 const Vector& u_start, StepCache* cache = nullptr);

/// Largest relative per-interval residual
///   |F(mid) - mass delta_i - op (u_i + u_{i+1})/2| / scale_i,
/// scale_i being the sum of the three term norms.
double galerkin_residual_check(const ParabolicSystem& sys, const TimeAffineFunction& u);

/// eta_i = |T_i|^{3/2} sqrt(rho_i^T gram_v^{-1} rho_i), rho_i = Fdot_i - op delta_i.
Indicators residual_indicators(const ParabolicSystem& sys, const TimeAffineFunction& u);

/// ||u - v||_X on the merged mesh: L2(V) part by exact quadrature plus
/// sum_i |T_i| ||mass delta_i||_{V*}^2.
double xnorm_diff(const ParabolicSystem& sys, const TimeAffineFunction& u,
                  const TimeAffineFunction& v);

struct CflRatio {
  /// max_v ||v||_V / ||v||_{V*} = largest eigenvalue of mass^{-1} gram_v.
  double c_inv = 0.0;
  /// 1 / (c_inv max |T|).
  double ratio = 0.0;
};

/// Power iteration on mass^{-1} gram_v, relative tolerance 1e-8.
double inverse_inequality_constant(const ParabolicSystem& sys);
CflRatio cfl_ratio(const ParabolicSystem& sys, const TimeMesh& mesh);
CflRatio cfl_ratio(double c_inv, const TimeMesh& mesh);

}  // namespace infsup
