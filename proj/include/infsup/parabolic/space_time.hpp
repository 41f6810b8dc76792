#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "infsup/parabolic/crank_nicolson.hpp"
#include "infsup/qo/hierarchy.hpp"

namespace infsup {

/// Space-time Petrov-Galerkin hierarchy of the Crank-Nicolson scheme on the
/// nested time meshes `meshes` (coarse to fine):
///   X = continuous piecewise affine in time with values in R^dim_v,
///   Y = piecewise constant in time with values in R^dim_v, times R^dim_v
///       for the initial condition.
/// The level-k Galerkin solution is the Crank-Nicolson solution on meshes[k]
/// started from `u_start`. Gram matrices are the X-norm used by xnorm_diff
/// and sum_i |T_i| v_i^T gram_v v_i + phi^T mass phi.
SpaceHierarchy build_space_time_hierarchy(const ParabolicSystem& sys,
                                          std::span<const TimeMesh> meshes,
                                          const Vector& u_start);

/// Meshes of the first `levels` adaptive iterations (Dorfler with theta).
std::vector<TimeMesh> adaptive_meshes(const ParabolicSystem& sys, double theta,
                                      std::size_t levels);

/// Heat hierarchy: 1-D build with n_space elements, fixed initial value,
/// `levels` adaptive meshes.
SpaceHierarchy heat_hierarchy(std::size_t n_space, std::size_t levels, double theta);

/// Same spaces with form = gram_x, Y = X and a seeded random right-hand side.
SpaceHierarchy symmetric_surrogate(const SpaceHierarchy& h, std::uint64_t seed);

/// Time-affine coefficients of X-level solution lambda expressed in the
/// ambient (finest-mesh nodal) coordinates, for cross-checks.
TimeAffineFunction ambient_to_function(const TimeMesh& finest, std::span<const double> coeffs,
                                       std::size_t dim_v);

}  // namespace infsup
