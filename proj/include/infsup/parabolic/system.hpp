#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "infsup/linalg/matrix.hpp"
#include "infsup/linalg/spd.hpp"

namespace infsup {

/// Strictly increasing breakpoints 0 = t_0 < ... < t_n = t_end.
class TimeMesh {
 public:
  TimeMesh() = default;
  /// Throws InvalidArgument unless strictly increasing, starting at 0, with
  /// at least one interval.
  explicit TimeMesh(std::vector<double> breakpoints);
  static TimeMesh uniform(double t_end, std::size_t intervals);

  std::size_t intervals() const noexcept { return t_.size() - 1; }
  std::size_t nodes() const noexcept { return t_.size(); }
  double t_end() const noexcept { return t_.back(); }
  double operator[](std::size_t i) const { return t_[i]; }
  double length(std::size_t i) const { return t_[i + 1] - t_[i]; }
  double midpoint(std::size_t i) const { return 0.5 * (t_[i] + t_[i + 1]); }
  double max_step() const;
  double min_step() const;
  const std::vector<double>& breakpoints() const noexcept { return t_; }

  /// Every breakpoint of `coarse` is a breakpoint of this mesh.
  bool refines(const TimeMesh& coarse) const;
  /// Bisects the listed intervals.
  TimeMesh bisect(std::span<const std::size_t> marked) const;
  TimeMesh bisect_all() const;
  /// Union of the breakpoints of both meshes (same end time required).
  static TimeMesh merge(const TimeMesh& a, const TimeMesh& b);

  friend bool operator==(const TimeMesh&, const TimeMesh&) = default;

 private:
  std::vector<double> t_;
};

/// How the discrete initial value is obtained.
enum class InitialValue {
  /// Use SemiDiscreteSystem::u0 as given.
  fixed,
  /// Solve (mass + |T_0|/2 op) u = u0_moments with the first step of the
  /// mesh being solved on.
  project_per_mesh,
};

/// d/dt <u, v> + <A u, v> = <f, v> in coordinates:
///   mass   H inner product,
///   gram_v V inner product,
///   op     the operator, <A u, v> = v^T op u.
/// The load is given as dual vectors F(t) = (<f(t), phi_i>)_i at the nodes of
/// the initial mesh and interpolated affinely; an empty list means f = 0.
struct SemiDiscreteSystem {
  Matrix mass;
  Matrix gram_v;
  Matrix op;
  TimeMesh initial_mesh;
  std::vector<Vector> load_nodes;
  Vector u0;
  Vector u0_moments;
  InitialValue initial_mode = InitialValue::fixed;

  std::size_t dim_v() const noexcept { return mass.rows(); }
  double t_end() const noexcept { return initial_mesh.t_end(); }
};

/// Validated system with cached factorizations of mass and gram_v.
class ParabolicSystem {
 public:
  /// Checks shapes, that mass and gram_v are SPD and that the symmetric part
  /// of op is positive definite. Throws InvalidArgument / NotSpdError.
  explicit ParabolicSystem(SemiDiscreteSystem sys);

  const SemiDiscreteSystem& data() const noexcept { return sys_; }
  std::size_t dim_v() const noexcept { return sys_.dim_v(); }
  double t_end() const noexcept { return sys_.t_end(); }
  const SpdFactor& gram_factor() const noexcept { return *gram_; }
  const SpdFactor& mass_factor() const noexcept { return *mass_; }

  /// Affine interpolant of the load at time t (zero when f = 0).
  Vector load(double t) const;
  /// Time derivative of the load on the initial interval containing (a+b)/2.
  Vector load_slope(double a, double b) const;
  bool has_load() const noexcept { return !sys_.load_nodes.empty(); }

 private:
  SemiDiscreteSystem sys_;
  std::shared_ptr<const SpdFactor> gram_;
  std::shared_ptr<const SpdFactor> mass_;
};

/// Piecewise affine in time: one coefficient vector per mesh node.
struct TimeAffineFunction {
  TimeMesh mesh;
  std::vector<Vector> nodes;

  /// Linear interpolation inside the containing interval.
  Vector at(double t) const;
  /// Elementwise constant time derivative on interval i.
  Vector slope(std::size_t i) const;
};

}  // namespace infsup
