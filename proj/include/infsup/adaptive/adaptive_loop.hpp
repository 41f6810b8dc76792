#pragma once

#include <concepts>
#include <cstddef>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infsup/adaptive/dorfler.hpp"

namespace infsup {

/// solve -> estimate -> refine. refine() must split at least the marked
/// elements and may split more.
template <class P>
concept AdaptiveProblem = requires(const P& p, const typename P::Mesh& mesh,
                                   const typename P::Solution& u,
                                   std::span<const std::size_t> marked) {
  { p.solve(mesh) } -> std::convertible_to<typename P::Solution>;
  { p.estimate(mesh, u) } -> std::convertible_to<Indicators>;
  { p.refine(mesh, marked) } -> std::convertible_to<typename P::Mesh>;
  { p.element_count(mesh) } -> std::convertible_to<std::size_t>;
};

struct StopCriteria {
  /// Maximal trace length.
  std::size_t max_iters = 50;
  /// Stop once a recorded mesh has at least this many elements.
  std::size_t max_elements = std::numeric_limits<std::size_t>::max();
  /// Stop once the estimator is at or below this value.
  double estimator_floor = 0.0;
};

enum class StopReason { max_iters, max_elements, estimator_floor, steps_done, failure };

template <class Mesh, class Solution>
struct AdaptiveStep {
  std::size_t n_elements = 0;
  double eta = 0.0;
  Indicators indicators;
  /// Elements refined after this step (empty on the last recorded step).
  std::vector<std::size_t> marked;
  Mesh mesh;
  Solution solution;
};

template <class Mesh, class Solution>
struct AdaptiveTrace {
  std::vector<AdaptiveStep<Mesh, Solution>> steps;
  StopReason reason = StopReason::max_iters;
  /// Message of the exception that ended the run early, if any.
  std::optional<std::string> failure;

  std::vector<double> estimators() const {
    std::vector<double> e;
    for (const auto& s : steps) e.push_back(s.eta);
    return e;
  }
  std::vector<std::size_t> element_counts() const {
    std::vector<std::size_t> n;
    for (const auto& s : steps) n.push_back(s.n_elements);
    return n;
  }
};

template <AdaptiveProblem P>
using TraceOf = AdaptiveTrace<typename P::Mesh, typename P::Solution>;

namespace detail {

template <AdaptiveProblem P, class Marker, class Done>
TraceOf<P> drive(const P& problem, typename P::Mesh mesh, Marker mark, Done done) {
  TraceOf<P> trace;
  try {
    for (;;) {
      typename P::Solution u = problem.solve(mesh);
      Indicators ind = problem.estimate(mesh, u);
      const std::size_t count = problem.element_count(mesh);
      const double eta = ind.estimator();
      trace.steps.push_back({count, eta, std::move(ind), {}, mesh, std::move(u)});
      if (auto reason = done(trace)) {
        trace.reason = *reason;
        return trace;
      }
      auto& last = trace.steps.back();
      last.marked = mark(last.indicators);
      mesh = problem.refine(mesh, last.marked);
    }
  } catch (const std::exception& e) {
    trace.reason = StopReason::failure;
    trace.failure = e.what();
  }
  return trace;
}

}  // namespace detail

/// Adaptive loop with Dorfler marking. Solver exceptions end the run; the
/// trace up to that point is returned with `failure` set.
template <AdaptiveProblem P>
TraceOf<P> run_adaptive(const P& problem, typename P::Mesh initial, double theta,
                        const StopCriteria& stop) {
  // validate theta before doing any work
  (void)dorfler_mark(Indicators({1.0}), theta);
  return detail::drive(
      problem, std::move(initial),
      [theta](const Indicators& ind) { return dorfler_mark(ind, theta).marked; },
      [&stop](const TraceOf<P>& t) -> std::optional<StopReason> {
        const auto& s = t.steps.back();
        if (s.eta <= stop.estimator_floor) return StopReason::estimator_floor;
        if (t.steps.size() >= stop.max_iters) return StopReason::max_iters;
        if (s.n_elements >= stop.max_elements) return StopReason::max_elements;
        return std::nullopt;
      });
}

/// Refines every element `steps` times; the trace has steps + 1 entries.
template <AdaptiveProblem P>
TraceOf<P> run_uniform(const P& problem, typename P::Mesh initial, std::size_t steps) {
  return detail::drive(
      problem, std::move(initial),
      [](const Indicators& ind) {
        std::vector<std::size_t> all(ind.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        return all;
      },
      [steps](const TraceOf<P>& t) -> std::optional<StopReason> {
        if (t.steps.size() > steps) return StopReason::steps_done;
        return std::nullopt;
      });
}

}  // namespace infsup
