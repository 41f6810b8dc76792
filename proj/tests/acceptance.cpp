// Acceptance gate: one PASS/FAIL line per criterion. `--only N` runs a single
// criterion; the exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <fmt/format.h>

#include "infsup/adaptive/adaptive_loop.hpp"
#include "infsup/adaptive/dorfler.hpp"
#include "infsup/block/a_star.hpp"
#include "infsup/block/block_lu.hpp"
#include "infsup/block/block_norms.hpp"
#include "infsup/block/growth.hpp"
#include "infsup/linalg/lu.hpp"
#include "infsup/linalg/schatten.hpp"
#include "infsup/linalg/svd.hpp"
#include "infsup/linalg/triangular.hpp"
#include "infsup/parabolic/heat.hpp"
#include "infsup/parabolic/space_time.hpp"
#include "infsup/qo/analysis.hpp"
#include "infsup/qo/linear_convergence.hpp"
#include "support.hpp"

using namespace infsup;
using namespace infsup::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// 1. LU growth of the modified Hilbert matrix

Outcome hilbert_growth() {
  const auto t0 = Clock::now();
  std::vector<std::size_t> sizes;
  for (std::size_t n = 16; n <= 4096; n *= 2) sizes.push_back(n);
  const GrowthReport rep = growth_experiment(hilbert_modified, sizes, 1);
  const double secs = seconds_since(t0);
  const GrowthExponents& e = *rep.exponents;
  bool converged = true;
  for (const auto& r : rep.rows) converged = converged && r.converged;
  const bool u_ok = e.u >= 0.25 && e.u <= 0.45;
  const bool l_ok = e.l >= -0.05 && e.l <= 0.08;
  return {u_ok && l_ok && secs <= 300.0 && converged,
          fmt::format("U exponent {:.4f} in [0.25,0.45]: {}; L exponent {:.4f} in [-0.05,0.08]: {}; "
                      "power iterations converged: {}; {:.1f}s",
                      e.u, u_ok ? "yes" : "no", e.l, l_ok ? "yes" : "no",
                      converged ? "yes" : "no", secs)};
}

// ---------------------------------------------------------------------------
// 2. Leading minors of the modified Hilbert matrix stay well conditioned and
//    its norm is uniformly bounded.

Outcome hilbert_admissibility() {
  // M(n)|_{jxj} = M(j), so j = 1..256 covers every minor for n <= 256.
  double worst_sigma = 1.0;
  double max_norm = 0.0;
  for (std::size_t j = 1; j <= 256; ++j) {
    const SingularSpectrum s = singular_values(hilbert_modified(j));
    worst_sigma = std::min(worst_sigma, s.smallest());
    max_norm = std::max(max_norm, s.largest());
  }
  const double norm_4096 = spectral_norm(hilbert_modified(4096));
  const bool sigma_ok = worst_sigma >= 1.0 - 1e-10;
  const bool norm_ok = max_norm <= 1.05 * norm_4096;
  return {sigma_ok && norm_ok,
          fmt::format("min sigma_min over minors {:.15f}; max ||M(n)|| (n<=256) {:.6f} vs "
                      "1.05*||M(4096)|| = {:.6f}",
                      worst_sigma, max_norm, 1.05 * norm_4096)};
}

// ---------------------------------------------------------------------------
// 3. Triangular truncation constants

Outcome truncation_suite() {
  std::mt19937_64 rng(20240301);
  std::uniform_int_distribution<std::size_t> dim(2, 64);
  std::size_t violations = 0;
  double worst2 = 0.0, worst4 = 0.0, worst_inf = 0.0, worst_block = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = dim(rng);
    const Matrix m = random_matrix(rng, n, n);
    const Matrix t = triu(m);
    const double r2 = schatten_norm(t, SchattenOrder::two) / schatten_norm(m, SchattenOrder::two);
    const double r4 = schatten_norm(t, SchattenOrder::four) / schatten_norm(m, SchattenOrder::four);
    const double rinf = spectral_norm(t) / spectral_norm(m);
    const double log_bound = std::ceil(std::log2(static_cast<double>(n))) + 1.0;
    // block version with a random partition
    std::uniform_int_distribution<std::size_t> nb(1, n);
    const BlockStructure bs = random_structure(rng, n, nb(rng));
    const Matrix tb = block_triu(m, bs);
    const double rb2 = bsnorm_2(tb, bs) / bsnorm_2(m, bs);
    const double rbinf = spectral_norm(tb) / spectral_norm(m);
    const double block_bound = std::ceil(std::log2(static_cast<double>(bs.blocks()))) + 1.0;
    worst2 = std::max(worst2, r2);
    worst4 = std::max(worst4, r4);
    worst_inf = std::max(worst_inf, rinf / log_bound);
    worst_block = std::max(worst_block, rbinf / block_bound);
    if (r2 > 1.0 + 1e-12) ++violations;
    if (r4 > 2.0) ++violations;
    if (rinf > log_bound) ++violations;
    if (rb2 > 1.0 + 1e-12) ++violations;
    if (rbinf > block_bound) ++violations;
  }
  return {violations == 0,
          fmt::format("200 matrices: max S2 ratio {:.4f} (<=1), max S4 ratio {:.4f} (<=2), "
                      "max spectral ratio/(ceil(log2 n)+1) {:.4f}, block {:.4f} (<=1); "
                      "violations {}",
                      worst2, worst4, worst_inf, worst_block, violations)};
}

// ---------------------------------------------------------------------------
// 4. Column identity for U^{-1} and block vs scalar LU

Outcome lu_identities() {
  const auto corpus = block_corpus(100, 4242);
  double worst_col = 0.0, worst_consistency = 0.0, worst_recon = 0.0;
  for (const auto& c : corpus) {
    const BlockLuFactors f = block_lu(c.m);
    const Eigen::MatrixXd u_inv = to_eigen(f.u).inverse();  // oracle
    for (std::size_t j = 0; j < c.m.structure.blocks(); ++j) {
      const Eigen::MatrixXd col = to_eigen(u_inverse_block_column(c.m, j));
      const auto rows = static_cast<Eigen::Index>(c.m.structure.end(j));
      const auto c0 = static_cast<Eigen::Index>(c.m.structure.begin(j));
      const auto w = static_cast<Eigen::Index>(c.m.structure.width(j));
      const Eigen::MatrixXd ref = u_inv.block(0, c0, rows, w);
      worst_col = std::max(worst_col, rel_spectral(col, ref));
    }
    // the same M as a unit-block matrix must match scalar LU
    const LuFactors s = lu_normalized(c.m.data);
    const BlockLuFactors fu = block_lu(BlockMatrix(c.m.data, BlockStructure::unit(c.m.data.rows())));
    worst_consistency = std::max({worst_consistency, rel_spectral(to_eigen(fu.l), to_eigen(s.l)),
                                  rel_spectral(to_eigen(fu.u), to_eigen(s.u))});
    worst_recon = std::max(worst_recon,
                           rel_spectral(to_eigen(f.l) * to_eigen(f.u), to_eigen(c.m.data)));
  }
  const bool ok = worst_col <= 1e-9 && worst_consistency <= 1e-9 && worst_recon <= 1e-9;
  return {ok, fmt::format("100 matrices: column identity {:.2e}, block/scalar consistency {:.2e}, "
                          "LU reconstruction {:.2e} (all <= 1e-9 relative)",
                          worst_col, worst_consistency, worst_recon)};
}

// ---------------------------------------------------------------------------
// 5. Neumann representation of U^{-1} and the A* recursion

// (I - A[j] A[j]^T)^k restricted to block column j, rows 0..n_{j+1}-1.
Eigen::MatrixXd oracle_a_star(const Eigen::MatrixXd& a, const BlockStructure& bs, std::size_t k) {
  const auto n = a.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < bs.blocks(); ++j) {
    const auto s = static_cast<Eigen::Index>(bs.end(j));
    const auto c0 = static_cast<Eigen::Index>(bs.begin(j));
    const Eigen::MatrixXd aj = a.topLeftCorner(s, s);
    const Eigen::MatrixXd base = Eigen::MatrixXd::Identity(s, s) - aj * aj.transpose();
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(s, s);
    for (std::size_t r = 0; r < k; ++r) p = p * base;
    out.block(0, c0, s, s - c0) = p.block(0, c0, s, s - c0);
  }
  return out;
}

Outcome neumann_representation() {
  const auto corpus = block_corpus(100, 4242);
  double worst_neumann = 0.0, worst_star = 0.0, worst_oracle = 0.0;
  std::size_t max_terms = 0;
  bool all_converged = true;
  NeumannOptions opts;
  opts.k_max = 40000;
  for (const auto& c : corpus) {
    const NeumannResult r = u_inverse_neumann(c.m, opts);
    all_converged = all_converged && r.converged;
    max_terms = std::max(max_terms, r.terms);
    const Eigen::MatrixXd dense = to_eigen(block_lu(c.m).u).inverse();
    worst_neumann = std::max(worst_neumann, oracle_spectral(to_eigen(r.u_inverse) - dense));

    Matrix a = c.m.data;
    a *= std::sqrt(r.alpha);
    const BlockMatrix am(a, c.m.structure);
    const Eigen::MatrixXd ae = to_eigen(a);
    for (std::size_t k = 1; k <= 8; ++k) {
      const Eigen::MatrixXd direct = to_eigen(a_star_direct(am, k).data);
      const Eigen::MatrixXd rec = to_eigen(a_star_recursive(am, k).data);
      worst_star = std::max(worst_star, rel_spectral(rec, direct));
      worst_oracle = std::max(worst_oracle, rel_spectral(direct, oracle_a_star(ae, c.m.structure, k)));
    }
  }
  const bool ok = worst_neumann <= 1e-8 && worst_star <= 1e-10 && worst_oracle <= 1e-10;
  return {ok && all_converged,
          fmt::format("Neumann vs dense U^-1 {:.2e} (<=1e-8, spectral), up to {} terms, all "
                      "converged: {}; A* recursive vs direct {:.2e}, direct vs oracle {:.2e} "
                      "(<=1e-10)",
                      worst_neumann, max_terms, all_converged ? "yes" : "no", worst_star,
                      worst_oracle)};
}

// ---------------------------------------------------------------------------
// 6. Doerfler marking is minimal

std::size_t exhaustive_minimum(const std::vector<double>& v, double theta) {
  double total = 0.0;
  for (double x : v) total += x * x;
  const std::size_t n = v.size();
  std::size_t best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto card = static_cast<std::size_t>(__builtin_popcount(mask));
    if (card >= best) continue;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s += v[i] * v[i];
    if (s >= theta * total) best = card;
  }
  return best;
}

Outcome dorfler_minimality() {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::bernoulli_distribution repeat(0.2);
  std::size_t mismatches = 0, checks = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(size(rng));
    for (std::size_t i = 0; i < v.size(); ++i) {
      // some repeated values to exercise ties
      v[i] = (i > 0 && repeat(rng)) ? v[i - 1] : value(rng);
    }
    const Indicators ind(v);
    for (double theta : {0.3, 0.5, 0.7}) {
      const MarkResult r = dorfler_mark(ind, theta);
      double s = 0.0;
      for (std::size_t i : r.marked) s += v[i] * v[i];
      ++checks;
      if (r.marked.size() != exhaustive_minimum(v, theta) || s < theta * ind.total_sq()) {
        ++mismatches;
      }
    }
  }
  return {mismatches == 0,
          fmt::format("{} (set, theta) pairs, greedy != exhaustive minimum: {}", checks, mismatches)};
}

// ---------------------------------------------------------------------------
// Systems shared by criteria 7 and 8.

SemiDiscreteSystem scalar_system() {
  SemiDiscreteSystem s;
  s.mass = Matrix{{1.0}};
  s.gram_v = Matrix{{1.0}};
  s.op = Matrix{{1.0}};
  s.initial_mesh = TimeMesh({0.0, 1.0});
  s.u0 = {1.0};
  s.u0_moments = {1.0};
  s.initial_mode = InitialValue::fixed;
  return s;
}

// SPD mass, op with positive definite symmetric part plus a skew part.
SemiDiscreteSystem random_system(std::mt19937_64& rng, std::size_t d, bool with_load) {
  const Matrix b = random_matrix(rng, d, d);
  Matrix mass = transpose_multiply(b, b);
  mass += static_cast<double>(d) * Matrix::identity(d);
  const Matrix c = random_matrix(rng, d, d);
  Matrix op = transpose_multiply(c, c);
  op += Matrix::identity(d);
  const Matrix k = random_matrix(rng, d, d);
  op += 0.5 * (k - transpose(k));
  SemiDiscreteSystem s;
  s.gram_v = 0.5 * (op + transpose(op));
  s.gram_v += mass;
  s.mass = std::move(mass);
  s.op = std::move(op);
  s.initial_mesh = TimeMesh({0.0, 0.5, 1.0});
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  s.u0.resize(d);
  for (double& x : s.u0) x = u(rng);
  s.u0_moments = s.mass * s.u0;
  s.initial_mode = InitialValue::fixed;
  if (with_load) {
    for (std::size_t i = 0; i < 3; ++i) {
      Vector f(d);
      for (double& x : f) x = u(rng);
      s.load_nodes.push_back(std::move(f));
    }
  }
  return s;
}

TimeMesh random_mesh(std::mt19937_64& rng, const TimeMesh& initial, std::size_t rounds) {
  TimeMesh m = initial;
  for (std::size_t r = 0; r < rounds; ++r) {
    std::vector<std::size_t> marked;
    std::bernoulli_distribution pick(0.4);
    for (std::size_t i = 0; i < m.intervals(); ++i)
      if (pick(rng)) marked.push_back(i);
    m = m.bisect(marked);
  }
  return m;
}

// Every (system, mesh) pair used by 7 and 8: fixed meshes plus the meshes an
// adaptive run visits.
struct Case {
  std::string name;
  std::shared_ptr<ParabolicSystem> sys;
  std::vector<TimeMesh> meshes;
  bool has_load = false;
};

std::vector<Case> solver_cases() {
  std::vector<Case> cases;
  auto add_adaptive = [](Case& c, std::size_t iters) {
    StopCriteria stop;
    stop.max_iters = iters;
    const auto trace = run_adaptive(HeatProblem(c.sys->data()), c.sys->data().initial_mesh, 0.5, stop);
    for (const auto& s : trace.steps) c.meshes.push_back(s.mesh);
  };
  {
    Case c{"scalar", std::make_shared<ParabolicSystem>(scalar_system()), {}, false};
    for (std::size_t n : {1, 2, 7, 64}) c.meshes.push_back(TimeMesh::uniform(1.0, n));
    cases.push_back(std::move(c));
  }
  for (std::size_t n : {8, 32, 64}) {
    Case c{fmt::format("heat1d n={}", n), std::make_shared<ParabolicSystem>(build_heat_1d(n)), {},
           false};
    for (std::size_t k : {1, 4, 16, 128}) c.meshes.push_back(TimeMesh::uniform(1.0, k));
    add_adaptive(c, 12);
    cases.push_back(std::move(c));
  }
  {
    Case c{"heat2d n=8", std::make_shared<ParabolicSystem>(build_heat_2d_tensor(8)), {}, false};
    for (std::size_t k : {1, 8, 32}) c.meshes.push_back(TimeMesh::uniform(1.0, k));
    add_adaptive(c, 8);
    cases.push_back(std::move(c));
  }
  std::mt19937_64 rng(99);
  for (int i = 0; i < 6; ++i) {
    const bool load = i % 2 == 1;
    Case c{fmt::format("random d=5 #{}{}", i, load ? " with load" : ""),
           std::make_shared<ParabolicSystem>(random_system(rng, 5, load)), {}, load};
    for (std::size_t r : {0, 2, 5}) c.meshes.push_back(random_mesh(rng, c.sys->data().initial_mesh, r));
    add_adaptive(c, 8);
    cases.push_back(std::move(c));
  }
  return cases;
}

double h_norm(const ParabolicSystem& sys, const Vector& u) {
  return sys.mass_factor().norm(u);
}

// ---------------------------------------------------------------------------
// 7. Crank-Nicolson oracle and energy decay

Outcome crank_nicolson_oracle() {
  const ParabolicSystem scalar(scalar_system());
  const TimeAffineFunction u = cn_solve(scalar, TimeMesh({0.0, 1.0}));
  const double err = std::abs(u.nodes.back()[0] - 1.0 / 3.0);
  const bool exact = err <= 2.0 * std::numeric_limits<double>::epsilon();

  std::size_t solves = 0, increases = 0;
  double worst_growth = 0.0;
  for (const Case& c : solver_cases()) {
    if (c.has_load) continue;
    for (const TimeMesh& m : c.meshes) {
      const TimeAffineFunction s = cn_solve(*c.sys, m);
      ++solves;
      for (std::size_t i = 0; i + 1 < s.nodes.size(); ++i) {
        const double a = h_norm(*c.sys, s.nodes[i]);
        const double b = h_norm(*c.sys, s.nodes[i + 1]);
        // rounding slack only
        if (b > a * (1.0 + 1e-13)) ++increases;
        worst_growth = std::max(worst_growth, b / a - 1.0);
      }
    }
  }
  return {exact && increases == 0,
          fmt::format("scalar step |u1 - 1/3| = {:.3e}; {} f=0 solves, energy increases {} "
                      "(max relative step change {:+.2e})",
                      err, solves, increases, worst_growth)};
}

// ---------------------------------------------------------------------------
// 8. Galerkin equivalence: elementwise mean residual vanishes

Outcome galerkin_equivalence() {
  std::size_t solves = 0;
  double worst = 0.0;
  std::string worst_case;
  for (const Case& c : solver_cases()) {
    for (const TimeMesh& m : c.meshes) {
      const double r = galerkin_residual_check(*c.sys, cn_solve(*c.sys, m));
      ++solves;
      if (r > worst) {
        worst = r;
        worst_case = c.name;
      }
    }
  }
  // plus every solve of the heat experiment itself
  HeatConfig cfg;
  cfg.steps_adaptive = 20;
  const HeatReport rep = heat_experiment(cfg);
  const double heat_worst = rep.max_galerkin_residual;
  return {worst <= 1e-10 && heat_worst <= 1e-10,
          fmt::format("{} solves, max relative residual {:.2e} ({}); heat experiment solves "
                      "{:.2e} (<=1e-10)",
                      solves, worst, worst_case, heat_worst)};
}

// ---------------------------------------------------------------------------
// 9. Heat-equation convergence rates

Outcome heat_rates() {
  const auto t0 = Clock::now();
  HeatConfig cfg;  // 1-D, n_space 64, theta 0.5
  const HeatReport rep = heat_experiment(cfg);
  const double secs = seconds_since(t0);
  const std::size_t iters = rep.adaptive.size() - 1;
  const double a = rep.adaptive_eta_slope.value_or(NAN);
  const double u = rep.uniform_eta_slope.value_or(NAN);
  const double spread = rep.reliability_max / rep.reliability_min;
  const bool ok = iters >= 18 && a <= -0.8 && u >= -0.40 && u <= -0.18 && spread <= 10.0 &&
                  rep.min_step_location < 0.05 && secs <= 120.0;
  return {ok, fmt::format("{} adaptive iterations; adaptive eta slope {:.4f} (<=-0.8); uniform "
                          "slope {:.4f} in [-0.40,-0.18]; err/eta spread {:.2f} (<=10); smallest "
                          "step {:.3e} at t={:.3g} (<0.05); {:.1f}s",
                          iters, a, u, spread, rep.min_step, rep.min_step_location, secs)};
}

// ---------------------------------------------------------------------------
// 10. Quasi-orthogonality against the LU bound

Outcome quasi_orthogonality() {
  const SpaceHierarchy h = heat_hierarchy(17, 6, 0.5);
  const QoReport rep = analyze_hierarchy(h, std::nullopt);
  std::size_t pairs = 0, above = 0;
  double worst_margin = 0.0;
  for (const QoEmpiricalEntry& e : rep.empirical) {
    for (const QoBoundEntry& b : rep.bounds) {
      if (b.level != e.level || b.n != e.n) continue;
      ++pairs;
      if (e.ratio > b.bound.bound) ++above;
      worst_margin = std::max(worst_margin, e.ratio / b.bound.bound);
    }
  }
  const bool dims_ok = rep.levels == 6 && h.gram_x.rows() % 16 == 0;

  const QoReport sym = analyze_hierarchy(symmetric_surrogate(h, 11), std::nullopt);
  double sym_worst = 0.0;
  for (const QoEmpiricalEntry& e : sym.empirical) sym_worst = std::max(sym_worst, e.ratio);
  const bool ok = dims_ok && pairs == rep.empirical.size() && pairs > 0 && above == 0 &&
                  sym_worst <= 1.0 + 1e-9;
  return {ok, fmt::format("heat hierarchy (dim_v 16, 6 levels): {} (l,N) pairs, empirical above "
                          "bound {}, max empirical/bound {:.3e}; symmetric surrogate max C {:.12f} "
                          "(<=1+1e-9)",
                          pairs, above, worst_margin, sym_worst)};
}

// ---------------------------------------------------------------------------
// 11. Linear convergence bookkeeping

Outcome linear_convergence() {
  const std::vector<double> two(50, 2.0);
  const LinearConvergence lc = linear_convergence_from_d(two, 1.0);
  const double q_log_ref = std::numbers::ln2 - 1.0;
  const bool const_ok = lc.n0 && *lc.n0 == 2 && std::abs(lc.q_log - q_log_ref) <= 1e-12 && lc.q &&
                        std::abs(*lc.q - std::exp(q_log_ref / 2.0)) <= 1e-12;

  std::size_t finite = 0, tried = 0;
  std::size_t largest_n0 = 0;
  for (double c : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
    const LinearConvergence r = linear_convergence_from_d(
        [c](std::size_t n) { return c * std::sqrt(static_cast<double>(n)); }, 1.0,
        std::size_t{1'000'000'000});
    ++tried;
    if (r.n0) {
      ++finite;
      largest_n0 = std::max(largest_n0, *r.n0);
    }
  }
  return {const_ok && finite == tried,
          fmt::format("D=2: N0 {}, q_log {:.15f} (ref {:.15f}), q {:.15f}; D=c*sqrt(N), c in "
                      "0.1..1000: finite N0 {}/{} (largest {})",
                      lc.n0 ? fmt::to_string(*lc.n0) : "none", lc.q_log, q_log_ref,
                      lc.q.value_or(NAN), finite, tried, largest_n0)};
}

// ---------------------------------------------------------------------------
// 12. CLI determinism

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_determinism() {
  const fs::path root = fs::temp_directory_path() / fmt::format("infsup_determinism_{}", ::getpid());
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string cli = INFSUP_CLI_PATH;
  const fs::path bundle = root / "hier.bundle";
  struct Run {
    std::string name;
    std::string args;
  };
  const std::vector<Run> runs = {
      {"hilbert-lu", "hilbert-lu --sizes 16..256 --svg"},
      {"heat-adaptive", "heat-adaptive --steps 20 --svg"},
      {"qo-analyze", fmt::format("qo-analyze --export-bundle {}", (root / "export.bundle").string())},
      {"qo-analyze-symmetric", "qo-analyze --symmetric --seed 5"},
  };
  std::size_t files = 0, differ = 0, failed = 0;
  std::vector<std::string> notes;
  for (const Run& r : runs) {
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = root / fmt::format("{}_{}", r.name, rep);
      const std::string cmd =
          fmt::format("\"{}\" {} --out-dir \"{}\" > \"{}\" 2>&1", cli, r.args, out.string(),
                      (root / fmt::format("{}_{}.log", r.name, rep)).string());
      if (std::system(cmd.c_str()) != 0) {
        ++failed;
        notes.push_back(r.name + " failed");
      }
    }
    for (const auto& entry : fs::directory_iterator(root / fmt::format("{}_0", r.name))) {
      const fs::path other = root / fmt::format("{}_1", r.name) / entry.path().filename();
      ++files;
      if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
        ++differ;
        notes.push_back(entry.path().filename().string());
      }
    }
  }
  // a bundle read back gives the same CSV as the in-process hierarchy
  fs::copy_file(root / "export.bundle", bundle);
  const std::string cmd = fmt::format("\"{}\" qo-analyze --bundle \"{}\" --out-dir \"{}\" > /dev/null 2>&1",
                                      cli, bundle.string(), (root / "from_bundle").string());
  if (std::system(cmd.c_str()) != 0) {
    ++failed;
  } else {
    ++files;
    if (slurp(root / "from_bundle" / "qo_constants.csv") !=
        slurp(root / "qo-analyze_0" / "qo_constants.csv")) {
      ++differ;
      notes.push_back("bundle round trip");
    }
  }
  fs::remove_all(root);
  std::string extra;
  for (const auto& n : notes) extra += " " + n;
  return {failed == 0 && differ == 0 && files >= 7,
          fmt::format("{} subcommand configurations run twice, {} output files compared, {} "
                      "differ, {} runs failed{}",
                      runs.size(), files, differ, failed, extra.empty() ? "" : ";" + extra)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "hilbert LU growth exponents", hilbert_growth},
      {2, "hilbert minors and uniform norm bound", hilbert_admissibility},
      {3, "triangular truncation constants", truncation_suite},
      {4, "LU column identity and block/scalar consistency", lu_identities},
      {5, "Neumann representation and A* recursion", neumann_representation},
      {6, "Doerfler marking minimality", dorfler_minimality},
      {7, "Crank-Nicolson scalar oracle and energy decay", crank_nicolson_oracle},
      {8, "Galerkin equivalence of Crank-Nicolson", galerkin_equivalence},
      {9, "heat equation convergence rates", heat_rates},
      {10, "quasi-orthogonality below LU bound", quasi_orthogonality},
      {11, "linear convergence bookkeeping", linear_convergence},
      {12, "CLI determinism", cli_determinism},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      fmt::print(stderr, "usage: acceptance [--only N]\n");
      return 1;
    }
  }
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    if (!o.pass) ++failures;
    fmt::print("{} criterion {:>2} ({}): {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
