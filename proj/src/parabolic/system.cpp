#include "infsup/parabolic/system.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <iterator>

#include "infsup/linalg/errors.hpp"

namespace infsup {

TimeMesh::TimeMesh(std::vector<double> breakpoints) : t_(std::move(breakpoints)) {
  if (t_.size() < 2 || t_.front() != 0.0) {
    throw InvalidArgument("TimeMesh: need at least one interval starting at t = 0");
  }
  for (std::size_t i = 1; i < t_.size(); ++i) {
    if (!(t_[i] > t_[i - 1]) || !std::isfinite(t_[i])) {
      throw InvalidArgument(fmt::format("TimeMesh: breakpoints not increasing at {}", i));
    }
  }
}

TimeMesh TimeMesh::uniform(double t_end, std::size_t intervals) {
  if (intervals == 0 || !(t_end > 0.0)) throw InvalidArgument("TimeMesh::uniform: bad arguments");
  std::vector<double> t(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    t[i] = t_end * static_cast<double>(i) / static_cast<double>(intervals);
  }
  t.back() = t_end;
  return TimeMesh(std::move(t));
}

double TimeMesh::max_step() const {
  double h = 0.0;
  for (std::size_t i = 0; i < intervals(); ++i) h = std::max(h, length(i));
  return h;
}

double TimeMesh::min_step() const {
  double h = length(0);
  for (std::size_t i = 1; i < intervals(); ++i) h = std::min(h, length(i));
  return h;
}

bool TimeMesh::refines(const TimeMesh& coarse) const {
  return std::includes(t_.begin(), t_.end(), coarse.t_.begin(), coarse.t_.end());
}

TimeMesh TimeMesh::bisect(std::span<const std::size_t> marked) const {
  std::vector<char> flag(intervals(), 0);
  for (std::size_t i : marked) {
    if (i >= intervals()) throw InvalidArgument("TimeMesh::bisect: interval index out of range");
    flag[i] = 1;
  }
  std::vector<double> t;
  t.reserve(t_.size() + marked.size());
  for (std::size_t i = 0; i < intervals(); ++i) {
    t.push_back(t_[i]);
    if (flag[i]) t.push_back(midpoint(i));
  }
  t.push_back(t_.back());
  return TimeMesh(std::move(t));
}

TimeMesh TimeMesh::bisect_all() const {
  std::vector<std::size_t> all(intervals());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return bisect(all);
}

TimeMesh TimeMesh::merge(const TimeMesh& a, const TimeMesh& b) {
  if (a.t_end() != b.t_end()) throw InvalidArgument("TimeMesh::merge: end times differ");
  std::vector<double> t;
  std::set_union(a.t_.begin(), a.t_.end(), b.t_.begin(), b.t_.end(), std::back_inserter(t));
  return TimeMesh(std::move(t));
}

ParabolicSystem::ParabolicSystem(SemiDiscreteSystem sys) : sys_(std::move(sys)) {
  const std::size_t n = sys_.mass.rows();
  if (n == 0) throw InvalidArgument("ParabolicSystem: empty system");
  for (const Matrix* m : {&sys_.mass, &sys_.gram_v, &sys_.op}) {
    if (m->rows() != n || m->cols() != n) {
      throw InvalidArgument("ParabolicSystem: mass, gram_v and op must share one square shape");
    }
  }
  if (sys_.initial_mesh.nodes() < 2) throw InvalidArgument("ParabolicSystem: no initial mesh");
  if (!sys_.load_nodes.empty()) {
    if (sys_.load_nodes.size() != sys_.initial_mesh.nodes()) {
      throw InvalidArgument("ParabolicSystem: one load vector per initial breakpoint expected");
    }
    for (const Vector& f : sys_.load_nodes) {
      if (f.size() != n || !all_finite(f)) {
        throw InvalidArgument("ParabolicSystem: malformed load vector");
      }
    }
  }
  const Vector& init =
      sys_.initial_mode == InitialValue::fixed ? sys_.u0 : sys_.u0_moments;
  if (init.size() != n || !all_finite(init)) {
    throw InvalidArgument("ParabolicSystem: initial data has the wrong size");
  }
  mass_ = std::make_shared<const SpdFactor>(sys_.mass);
  gram_ = std::make_shared<const SpdFactor>(sys_.gram_v);
  const Matrix sym = 0.5 * (sys_.op + transpose(sys_.op));
  try {
    SpdFactor check(sym);
  } catch (const NotSpdError&) {
    throw InvalidArgument("ParabolicSystem: op is not coercive (symmetric part not SPD)");
  }
}

Vector ParabolicSystem::load(double t) const {
  if (!has_load()) return Vector(dim_v(), 0.0);
  const auto& bp = sys_.initial_mesh.breakpoints();
  std::size_t i = static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), t) - bp.begin());
  i = std::clamp<std::size_t>(i, 1, bp.size() - 1) - 1;
  const double s = (t - bp[i]) / (bp[i + 1] - bp[i]);
  return (1.0 - s) * sys_.load_nodes[i] + s * sys_.load_nodes[i + 1];
}

Vector ParabolicSystem::load_slope(double a, double b) const {
  if (!has_load()) return Vector(dim_v(), 0.0);
  const auto& bp = sys_.initial_mesh.breakpoints();
  const double mid = 0.5 * (a + b);
  std::size_t i =
      static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), mid) - bp.begin());
  i = std::clamp<std::size_t>(i, 1, bp.size() - 1) - 1;
  return (1.0 / (bp[i + 1] - bp[i])) * (sys_.load_nodes[i + 1] - sys_.load_nodes[i]);
}

Vector TimeAffineFunction::at(double t) const {
  const auto& bp = mesh.breakpoints();
  std::size_t i = static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), t) - bp.begin());
  i = std::clamp<std::size_t>(i, 1, bp.size() - 1) - 1;
  if (t == bp[i]) return nodes[i];
  if (t == bp[i + 1]) return nodes[i + 1];
  const double s = (t - bp[i]) / (bp[i + 1] - bp[i]);
  return (1.0 - s) * nodes[i] + s * nodes[i + 1];
}

Vector TimeAffineFunction::slope(std::size_t i) const {
  return (1.0 / mesh.length(i)) * (nodes[i + 1] - nodes[i]);
}

}  // namespace infsup
