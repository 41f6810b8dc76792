#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "infsup/linalg/errors.hpp"
#include "infsup/parabolic/heat.hpp"
#include "infsup/parabolic/space_time.hpp"
#include "infsup/qo/analysis.hpp"
#include "support.hpp"

using namespace infsup;
using namespace infsup::testing;

namespace {

SemiDiscreteSystem scalar(double u0 = 1.0) {
  SemiDiscreteSystem s;
  s.mass = Matrix{{1.0}};
  s.gram_v = Matrix{{1.0}};
  s.op = Matrix{{1.0}};
  s.initial_mesh = TimeMesh({0.0, 1.0});
  s.u0 = {u0};
  s.u0_moments = {u0};
  return s;
}

SemiDiscreteSystem random_system(std::uint64_t seed, std::size_t d) {
  std::mt19937_64 rng(seed);
  const Matrix b = random_matrix(rng, d, d);
  SemiDiscreteSystem s;
  s.mass = transpose_multiply(b, b);
  s.mass += Matrix::identity(d);
  const Matrix c = random_matrix(rng, d, d);
  s.op = transpose_multiply(c, c);
  s.op += Matrix::identity(d);
  const Matrix k = random_matrix(rng, d, d);
  s.op += 0.3 * (k - transpose(k));
  s.gram_v = 0.5 * (s.op + transpose(s.op));
  s.initial_mesh = TimeMesh({0.0, 0.25, 1.0});
  s.u0.assign(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) s.u0[i] = std::sin(1.0 + static_cast<double>(i));
  s.u0_moments = s.mass * s.u0;
  for (int j = 0; j < 3; ++j) {
    Vector f(d);
    for (std::size_t i = 0; i < d; ++i) f[i] = std::cos(static_cast<double>(i * 3 + j));
    s.load_nodes.push_back(f);
  }
  return s;
}

}  // namespace

TEST(TimeMesh, ValidationBisectMerge) {
  EXPECT_THROW(TimeMesh({0.0}), InvalidArgument);
  EXPECT_THROW(TimeMesh({0.0, 0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(TimeMesh({0.1, 1.0}), InvalidArgument);
  const TimeMesh m({0.0, 0.5, 1.0});
  const std::vector<std::size_t> marked = {1};
  const TimeMesh r = m.bisect(marked);
  EXPECT_EQ(r.breakpoints(), (std::vector<double>{0.0, 0.5, 0.75, 1.0}));
  EXPECT_TRUE(r.refines(m));
  EXPECT_FALSE(m.refines(r));
  const TimeMesh u = TimeMesh::uniform(1.0, 4);
  EXPECT_EQ(TimeMesh::merge(r, u).intervals(), 4u);
  EXPECT_EQ(u.bisect_all().intervals(), 8u);
  EXPECT_DOUBLE_EQ(r.min_step(), 0.25);
}

TEST(HeatBuild, OneDimensionalStencils) {
  const SemiDiscreteSystem s = build_heat_1d(4);
  ASSERT_EQ(s.dim_v(), 3u);
  const double h = 0.25;
  EXPECT_DOUBLE_EQ(s.mass(0, 0), 4.0 * h / 6.0);
  EXPECT_DOUBLE_EQ(s.mass(0, 1), h / 6.0);
  EXPECT_DOUBLE_EQ(s.op(1, 1), 2.0 / h);
  EXPECT_DOUBLE_EQ(s.op(1, 2), -1.0 / h);
  EXPECT_DOUBLE_EQ(s.gram_v(0, 0), s.op(0, 0) + s.mass(0, 0));
  EXPECT_DOUBLE_EQ(s.u0_moments[1], h);
  EXPECT_EQ(build_heat_1d(4, {true}).gram_v, s.op);
  EXPECT_THROW(build_heat_1d(1), InvalidArgument);
  EXPECT_EQ(build_heat_2d_tensor(4).dim_v(), 9u);
}

TEST(CrankNicolson, ScalarStepsAreExact) {
  const ParabolicSystem sys(scalar());
  EXPECT_EQ(cn_solve(sys, TimeMesh({0.0, 1.0})).nodes.back()[0], 1.0 / 3.0);
  const TimeAffineFunction u = cn_solve(sys, TimeMesh::uniform(1.0, 8));
  const double amp = (1.0 - 1.0 / 16.0) / (1.0 + 1.0 / 16.0);
  EXPECT_NEAR(u.nodes.back()[0], std::pow(amp, 8), 1e-15);
}

TEST(CrankNicolson, MatchesEigenStepping) {
  const SemiDiscreteSystem data = random_system(3, 6);
  const ParabolicSystem sys(data);
  const TimeMesh mesh({0.0, 0.1, 0.25, 0.4, 0.7, 1.0});
  const TimeAffineFunction u = cn_solve(sys, mesh);
  const Eigen::MatrixXd m = to_eigen(data.mass), a = to_eigen(data.op);
  Eigen::VectorXd x = to_eigen(data.u0);
  for (std::size_t i = 0; i < mesh.intervals(); ++i) {
    const double h = mesh.length(i), t = mesh.midpoint(i);
    // load interpolated on the initial mesh {0, 0.25, 1}
    const int seg = t < 0.25 ? 0 : 1;
    const double s = seg == 0 ? t / 0.25 : (t - 0.25) / 0.75;
    const Eigen::VectorXd f = (1 - s) * to_eigen(data.load_nodes[seg]) + s * to_eigen(data.load_nodes[seg + 1]);
    x = (m + 0.5 * h * a).lu().solve((m - 0.5 * h * a) * x + h * f);
    EXPECT_LT((to_eigen(u.nodes[i + 1]) - x).norm(), 1e-12 * x.norm());
  }
  EXPECT_LE(galerkin_residual_check(sys, u), 1e-12);
}

TEST(CrankNicolson, MeshMustRefineInitial) {
  const ParabolicSystem sys(random_system(4, 3));
  EXPECT_THROW(cn_solve(sys, TimeMesh({0.0, 0.5, 1.0})), InvalidArgument);
}

TEST(CrankNicolson, PerMeshInitialProjection) {
  HeatOptions opts;
  const ParabolicSystem sys(build_heat_1d(8, opts));
  const TimeMesh mesh({0.0, 0.125, 1.0});
  const Vector u0 = initial_value(sys, mesh);
  const Eigen::MatrixXd lhs = to_eigen(sys.data().mass) + 0.0625 * to_eigen(sys.data().op);
  const Eigen::VectorXd ref = lhs.lu().solve(to_eigen(sys.data().u0_moments));
  EXPECT_LT((to_eigen(u0) - ref).norm(), 1e-13 * ref.norm());
}

TEST(Estimator, ScalarHandValues) {
  const ParabolicSystem sys(scalar());
  const TimeAffineFunction u = cn_solve(sys, TimeMesh({0.0, 1.0}));
  // delta = -2/3, residual 2/3 on a unit step
  EXPECT_NEAR(residual_indicators(sys, u).values()[0], 2.0 / 3.0, 1e-15);
  TimeAffineFunction zero{u.mesh, {{0.0}, {0.0}}};
  // int_0^1 (1 - 2t/3)^2 dt + (2/3)^2
  EXPECT_NEAR(xnorm_diff(sys, u, zero), std::sqrt(13.0 / 27.0 + 4.0 / 9.0), 1e-14);
  EXPECT_EQ(xnorm_diff(sys, u, u), 0.0);
}

TEST(Estimator, LinearScaling) {
  SemiDiscreteSystem a = random_system(5, 4);
  SemiDiscreteSystem b = a;
  b.u0 = -3.0 * b.u0;
  b.u0_moments = -3.0 * b.u0_moments;
  for (Vector& f : b.load_nodes) f = -3.0 * f;
  const ParabolicSystem sa(a), sb(b);
  const TimeMesh mesh = TimeMesh({0.0, 0.25, 1.0}).bisect_all().bisect_all();
  const TimeAffineFunction ua = cn_solve(sa, mesh), ub = cn_solve(sb, mesh);
  const auto ia = residual_indicators(sa, ua).values(), ib = residual_indicators(sb, ub).values();
  for (std::size_t i = 0; i < ia.size(); ++i) EXPECT_NEAR(ib[i], 3.0 * ia[i], 1e-12 * ib[i]);
  const TimeAffineFunction fine = cn_solve(sa, mesh.bisect_all());
  const TimeAffineFunction fine_b = cn_solve(sb, mesh.bisect_all());
  EXPECT_NEAR(xnorm_diff(sb, fine_b, ub), 3.0 * xnorm_diff(sa, fine, ua), 1e-10);
}

TEST(Estimator, InverseInequalityMatchesGeneralizedEigen) {
  const ParabolicSystem sys(build_heat_1d(10));
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      to_eigen(sys.data().gram_v), to_eigen(sys.data().mass));
  const double ref = es.eigenvalues().maxCoeff();
  EXPECT_NEAR(inverse_inequality_constant(sys), ref, 1e-6 * ref);
  const CflRatio r = cfl_ratio(ref, TimeMesh::uniform(1.0, 4));
  EXPECT_DOUBLE_EQ(r.ratio, 4.0 / ref);
}

TEST(System, RejectsNonCoerciveOperator) {
  SemiDiscreteSystem s = scalar();
  s.op = Matrix{{-1.0}};
  EXPECT_THROW(ParabolicSystem{s}, InvalidArgument);
  SemiDiscreteSystem t = scalar();
  t.mass = Matrix{{0.0}};
  EXPECT_THROW(ParabolicSystem{t}, NotSpdError);
}

TEST(HeatProblem, AdaptiveMeshesAreNestedAndEnergyDecays) {
  const HeatProblem p(build_heat_1d(16));
  StopCriteria stop;
  stop.max_iters = 10;
  const auto trace = run_adaptive(p, p.initial_mesh(), 0.5, stop);
  ASSERT_EQ(trace.steps.size(), 10u);
  for (std::size_t i = 1; i < trace.steps.size(); ++i) {
    EXPECT_TRUE(trace.steps[i].mesh.refines(trace.steps[i - 1].mesh));
    const auto& nodes = trace.steps[i].solution.nodes;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      EXPECT_LE(p.system().mass_factor().norm(nodes[k + 1]),
                p.system().mass_factor().norm(nodes[k]) * (1 + 1e-13));
    }
  }
}

TEST(HeatExperiment, NoAdaptiveStepsGivesNoSlope) {
  HeatConfig cfg;
  cfg.n_space = 8;
  cfg.steps_adaptive = 0;
  cfg.steps_uniform = 2;
  const HeatReport r = heat_experiment(cfg);
  EXPECT_EQ(r.adaptive.size(), 1u);
  EXPECT_FALSE(r.adaptive_eta_slope);
  cfg.theta = 1.0;
  EXPECT_THROW(heat_experiment(cfg), InvalidArgument);
}

TEST(SpaceTime, GalerkinSolutionsAreCrankNicolson) {
  HeatOptions opts;
  opts.initial_mode = InitialValue::fixed;
  const ParabolicSystem sys(build_heat_1d(6, opts));
  const std::vector<TimeMesh> meshes = adaptive_meshes(sys, 0.5, 4);
  const SpaceHierarchy h = build_space_time_hierarchy(sys, meshes, sys.data().u0);
  const HierarchicalBasis b = build_hierarchical_basis(h);
  const std::vector<Vector> lambdas = galerkin_sequence(h, b);
  const std::size_t d = sys.dim_v();
  for (std::size_t k = 0; k < meshes.size(); ++k) {
    const auto n = static_cast<Eigen::Index>(lambdas[k].size());
    const Eigen::VectorXd x = to_eigen(b.basis_x).leftCols(n) * to_eigen(lambdas[k]);
    const TimeAffineFunction ref = cn_solve_from(sys, meshes[k], sys.data().u0);
    const TimeAffineFunction got =
        ambient_to_function(meshes.back(), std::vector<double>(x.data(), x.data() + x.size()), d);
    for (std::size_t p = 0; p < meshes.back().nodes(); ++p) {
      const Vector r = ref.at(meshes.back()[p]);
      EXPECT_LT((to_eigen(got.nodes[p]) - to_eigen(r)).norm(), 1e-9 * (1.0 + to_eigen(r).norm()));
    }
  }
}

TEST(SpaceTime, GramXMatchesXnorm) {
  HeatOptions opts;
  opts.initial_mode = InitialValue::fixed;
  const ParabolicSystem sys(build_heat_1d(5, opts));
  const std::vector<TimeMesh> meshes = {TimeMesh::uniform(1.0, 1), TimeMesh::uniform(1.0, 2)};
  const SpaceHierarchy h = build_space_time_hierarchy(sys, meshes, sys.data().u0);
  std::mt19937_64 rng(8);
  const Matrix c = random_matrix(rng, h.gram_x.rows(), 1);
  const Vector v = c.column(0);
  const TimeAffineFunction f = ambient_to_function(meshes.back(), v, sys.dim_v());
  TimeAffineFunction zero{meshes.back(), std::vector<Vector>(3, Vector(sys.dim_v(), 0.0))};
  const double ref = xnorm_diff(sys, f, zero);
  EXPECT_NEAR(std::sqrt(dot(v, h.gram_x * v)), ref, 1e-12 * ref);
}

TEST(SpaceTime, HeatHierarchyShapeAndNesting) {
  const SpaceHierarchy h = heat_hierarchy(17, 6, 0.5);
  EXPECT_EQ(h.levels(), 6u);
  EXPECT_EQ(h.x_spaces.front().cols(), 32u);
  const HierarchicalBasis b = build_hierarchical_basis(h);
  EXPECT_EQ(b.structure.blocks(), 6u);
  const std::vector<TimeMesh> bad = {TimeMesh({0.0, 0.3, 1.0}), TimeMesh({0.0, 0.5, 1.0})};
  HeatOptions opts;
  opts.initial_mode = InitialValue::fixed;
  const ParabolicSystem sys(build_heat_1d(4, opts));
  EXPECT_THROW(build_space_time_hierarchy(sys, bad, sys.data().u0), NestingViolation);
}
