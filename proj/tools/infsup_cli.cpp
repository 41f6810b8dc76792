// infsup: block-LU growth, adaptive heat runs and quasi-orthogonality analysis.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "infsup/block/growth.hpp"
#include "infsup/io/bundle.hpp"
#include "infsup/io/csv.hpp"
#include "infsup/io/svg.hpp"
#include "infsup/linalg/errors.hpp"
#include "infsup/parabolic/heat.hpp"
#include "infsup/parabolic/space_time.hpp"
#include "infsup/qo/analysis.hpp"

namespace fs = std::filesystem;
using namespace infsup;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

std::string opt_number(const std::optional<double>& v) {
  return v ? fmt::format("{:.4f}", *v) : std::string("n/a");
}

// "16,32,64" or a dyadic range "16..4096".
std::vector<std::size_t> parse_sizes(const std::string& text) {
  auto to_count = [](const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size() || v == 0 || s.front() == '-') {
      throw InvalidArgument(fmt::format("--sizes: '{}' is not a positive integer", s));
    }
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const std::size_t lo = to_count(text.substr(0, dots));
    const std::size_t hi = to_count(text.substr(dots + 2));
    if (lo > hi) throw InvalidArgument("--sizes: empty range");
    for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
  }
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(to_count(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw InvalidArgument(fmt::format("--out-dir: cannot create {}", dir.string()));
  }
}

struct Common {
  std::string out_dir = ".";
  bool svg = false;
};

// ---- hilbert-lu ------------------------------------------------------------

struct HilbertArgs {
  std::string sizes = "16..4096";
  std::size_t block_size = 1;
  std::string family = "hilbert";
};

int run_hilbert(const HilbertArgs& a, const Common& c) {
  const std::vector<std::size_t> sizes = parse_sizes(a.sizes);
  if (a.block_size == 0) throw InvalidArgument("--block-size must be positive");
  prepare_out_dir(c.out_dir);
  MatrixFamily family = hilbert_modified;
  if (a.family == "identity") family = [](std::size_t n) { return Matrix::identity(n); };

  const GrowthReport rep = growth_experiment(family, sizes, a.block_size);
  CsvTable csv({"n", "L_norm_ratio", "U_norm_ratio", "Linv_norm_ratio", "Uinv_norm_ratio"});
  for (const GrowthRow& r : rep.rows) {
    csv.add_row({csv_number(r.n), csv_number(r.l_ratio()), csv_number(r.u_ratio()),
                 csv_number(r.l_inv_ratio()), csv_number(r.u_inv_ratio())});
    if (!r.converged) fmt::print(stderr, "warning: power iteration hit its cap at n = {}\n", r.n);
  }
  write_file_atomic(fs::path(c.out_dir) / "hilbert_lu.csv", csv.str());

  if (rep.exponents) {
    const GrowthExponents& e = *rep.exponents;
    fmt::print("exponent L     {:.4f}\nexponent U     {:.4f}\nexponent L^-1  {:.4f}\n"
               "exponent U^-1  {:.4f}\n",
               e.l, e.u, e.l_inv, e.u_inv);
  } else {
    fmt::print("exponents n/a (need at least two sizes)\n");
  }
  if (c.svg) {
    LogLogPlot plot{"normalized LU factor norms", "n", "norm / ||M||", {}, {}};
    PlotSeries l{"L", {}}, u{"U", {}}, li{"L^-1", {}}, ui{"U^-1", {}};
    for (const GrowthRow& r : rep.rows) {
      const double n = static_cast<double>(r.n);
      l.points.emplace_back(n, r.l_ratio());
      u.points.emplace_back(n, r.u_ratio());
      li.points.emplace_back(n, r.l_inv_ratio());
      ui.points.emplace_back(n, r.u_inv_ratio());
    }
    plot.series = {l, u, li, ui};
    if (!rep.rows.empty()) {
      const GrowthRow& r0 = rep.rows.front();
      plot.references.push_back({"n^0.35", 0.35, {static_cast<double>(r0.n), r0.u_ratio()}});
    }
    write_file_atomic(fs::path(c.out_dir) / "hilbert_lu.svg", render_svg(plot));
  }
  return 0;
}

// ---- heat-adaptive ---------------------------------------------------------

struct HeatArgs {
  std::string spatial = "1d";
  std::size_t n_space = 64;
  double theta = 0.5;
  std::size_t steps = 32;
  std::size_t uniform_steps = 10;
};

int run_heat(const HeatArgs& a, const Common& c) {
  if (!(a.theta > 0.0 && a.theta < 1.0)) throw InvalidArgument("--theta must lie in (0, 1)");
  if (a.n_space < 2) throw InvalidArgument("--n-space must be at least 2");
  HeatConfig cfg;
  cfg.spatial = a.spatial == "2d" ? Spatial::two_d : Spatial::one_d;
  cfg.n_space = a.n_space;
  cfg.theta = a.theta;
  cfg.steps_adaptive = a.steps;
  cfg.steps_uniform = a.uniform_steps;
  prepare_out_dir(c.out_dir);

  const HeatReport rep = heat_experiment(cfg);

  CsvTable conv({"method", "iter", "n_intervals", "eta", "err_x", "cfl_ratio"});
  auto add = [&conv](const char* method, const std::vector<HeatRow>& rows) {
    for (const HeatRow& r : rows) {
      conv.add_row({method, csv_number(r.iter), csv_number(r.n_intervals), csv_number(r.eta),
                    csv_number(r.err_x), csv_number(r.cfl_ratio)});
    }
  };
  add("adaptive", rep.adaptive);
  add("uniform", rep.uniform);
  CsvTable steps({"t_mid", "step_size"});
  for (auto [t, h] : rep.step_profile) steps.add_row({csv_number(t), csv_number(h)});
  write_file_atomic(fs::path(c.out_dir) / "heat_convergence.csv", conv.str());
  write_file_atomic(fs::path(c.out_dir) / "heat_steps.csv", steps.str());

  double cfl_max = 0.0;
  for (const HeatRow& r : rep.adaptive) cfl_max = std::max(cfl_max, r.cfl_ratio);
  fmt::print("adaptive slope eta   {}\n", opt_number(rep.adaptive_eta_slope));
  fmt::print("adaptive slope err   {}\n", opt_number(rep.adaptive_err_slope));
  fmt::print("uniform slope eta    {}  (window {} <= #T <= {})\n",
             opt_number(rep.uniform_eta_slope), kUniformWindowMin, kUniformWindowMax);
  fmt::print("uniform slope err    {}\n", opt_number(rep.uniform_err_slope));
  fmt::print("err/eta range        [{:.4g}, {:.4g}]\n", rep.reliability_min, rep.reliability_max);
  fmt::print("smallest step        {:.4g} at t = {:.4g}\n", rep.min_step, rep.min_step_location);
  fmt::print("CFL ratio (max)      {:.4g}  (c_inv = {:.4g})\n", cfl_max, rep.c_inv);
  fmt::print("reference intervals  {}\n", rep.reference_intervals);

  if (c.svg) {
    LogLogPlot plot{"time adaptivity, heat equation", "#T", "error / estimator", {}, {}};
    PlotSeries ae{"adaptive eta", {}}, ax{"adaptive err", {}}, ue{"uniform eta", {}},
        ux{"uniform err", {}};
    for (const HeatRow& r : rep.adaptive) {
      ae.points.emplace_back(static_cast<double>(r.n_intervals), r.eta);
      ax.points.emplace_back(static_cast<double>(r.n_intervals), r.err_x);
    }
    for (const HeatRow& r : rep.uniform) {
      ue.points.emplace_back(static_cast<double>(r.n_intervals), r.eta);
      ux.points.emplace_back(static_cast<double>(r.n_intervals), r.err_x);
    }
    plot.series = {ae, ax, ue, ux};
    if (!rep.adaptive.empty()) {
      const HeatRow& r0 = rep.adaptive.front();
      plot.references.push_back({"#T^-1", -1.0, {static_cast<double>(r0.n_intervals), r0.eta}});
      plot.references.push_back({"#T^-1/4", -0.25, {static_cast<double>(r0.n_intervals), r0.eta}});
    }
    write_file_atomic(fs::path(c.out_dir) / "heat_convergence.svg", render_svg(plot));
  }
  return 0;
}

// ---- qo-analyze ------------------------------------------------------------

struct QoArgs {
  std::string bundle;
  std::size_t n_space = 17;
  std::size_t levels = 6;
  double theta = 0.5;
  bool symmetric = false;
  std::uint64_t seed = 0;
  double tol = kDefaultRankTol;
  std::string export_bundle;
  ReductionInputs constants;
};

int run_qo(const QoArgs& a, const Common& c) {
  if (!(a.theta > 0.0 && a.theta < 1.0)) throw InvalidArgument("--theta must lie in (0, 1)");
  if (!(a.tol > 0.0 && a.tol < 1.0)) throw InvalidArgument("--tol must lie in (0, 1)");
  if (a.levels < 2) throw InvalidArgument("--levels must be at least 2");
  if (a.n_space < 3) throw InvalidArgument("--n-space must be at least 3");
  prepare_out_dir(c.out_dir);

  SpaceHierarchy h = a.bundle.empty() ? heat_hierarchy(a.n_space, a.levels, a.theta)
                                      : read_bundle(a.bundle);
  if (a.symmetric) h = symmetric_surrogate(h, a.seed);
  if (!a.export_bundle.empty()) write_file_atomic(a.export_bundle, format_bundle(h));

  const QoReport rep = analyze_hierarchy(h, a.constants, a.tol);

  fmt::print("levels               {}\n", rep.levels);
  fmt::print("dims                 {}\n", fmt::join(rep.dims, " "));
  fmt::print("gamma_hat            {:.6g}\n", rep.gamma_hat);
  fmt::print("C_a_hat              {:.6g}\n", rep.c_a_hat);
  fmt::print("||U||                {:.6g}\n", rep.u_norm);
  fmt::print("max_k ||U^-1(:,k)||  {:.6g}\n", rep.u_inv_col_max);
  fmt::print("LU bound (all)       {:.6g}\n", rep.bound_full);
  fmt::print("{:>4} {:>14} {:>14}\n", "N", "C(N) bound", "C(N) measured");
  for (std::size_t n = 0; n < rep.c_bound.size(); ++n) {
    fmt::print("{:>4} {:>14.6g} {:>14.6g}\n", n, rep.c_bound[n], rep.c_empirical[n]);
  }
  fmt::print("violations           {}\n", rep.violations);

  CsvTable csv({"N", "C_bound", "C_empirical", "D"});
  for (std::size_t n = 0; n < rep.c_bound.size(); ++n) {
    std::string d;
    if (rep.convergence && n >= 1 && n <= rep.convergence->d_of_n.size()) {
      d = csv_number(rep.convergence->d_of_n[n - 1]);
    }
    csv.add_row({csv_number(n), csv_number(rep.c_bound[n]), csv_number(rep.c_empirical[n]), d});
  }
  write_file_atomic(fs::path(c.out_dir) / "qo_constants.csv", csv.str());

  if (rep.convergence) {
    const LinearConvergence& lc = *rep.convergence;
    fmt::print("N0                   {}\n", lc.n0 ? fmt::to_string(*lc.n0) : "none");
    fmt::print("q_log                {:.6g}\n", lc.q_log);
    fmt::print("q                    {}\n", lc.q ? fmt::format("{:.6g}", *lc.q) : "n/a");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inf-sup stable block LU, quasi-orthogonality and adaptive time stepping"};
  app.require_subcommand(1);
  Common common;

  HilbertArgs hil;
  auto* hcmd = app.add_subcommand("hilbert-lu", "LU factor growth for the modified Hilbert matrix");
  hcmd->add_option("--sizes", hil.sizes, "comma list or dyadic range a..b")->capture_default_str();
  hcmd->add_option("--block-size", hil.block_size, "block size of the LU")->capture_default_str();
  hcmd->add_option("--family", hil.family, "matrix family")
      ->check(CLI::IsMember({"hilbert", "identity"}))
      ->capture_default_str();

  HeatArgs heat;
  auto* tcmd = app.add_subcommand("heat-adaptive", "adaptive Crank-Nicolson for the heat equation");
  tcmd->add_option("--spatial", heat.spatial, "spatial build")
      ->check(CLI::IsMember({"1d", "2d"}))
      ->capture_default_str();
  tcmd->add_option("--n-space", heat.n_space, "spatial elements per side")->capture_default_str();
  tcmd->add_option("--theta", heat.theta, "Dorfler parameter in (0, 1)")->capture_default_str();
  tcmd->add_option("--steps", heat.steps, "adaptive refinement steps")->capture_default_str();
  tcmd->add_option("--uniform-steps", heat.uniform_steps, "uniform refinement steps")
      ->capture_default_str();

  QoArgs qo;
  auto* qcmd = app.add_subcommand("qo-analyze", "quasi-orthogonality of a nested hierarchy");
  qcmd->add_option("--bundle", qo.bundle, "matrix bundle file (default: heat hierarchy)")
      ->check(CLI::ExistingFile);
  qcmd->add_option("--n-space", qo.n_space, "spatial elements of the heat hierarchy")
      ->capture_default_str();
  qcmd->add_option("--levels", qo.levels, "adaptive levels of the heat hierarchy")
      ->capture_default_str();
  qcmd->add_option("--theta", qo.theta, "Dorfler parameter for the heat meshes")
      ->capture_default_str();
  qcmd->add_flag("--symmetric", qo.symmetric, "replace form and Y by the X inner product");
  qcmd->add_option("--seed", qo.seed, "seed of the random rhs for --symmetric")
      ->capture_default_str();
  qcmd->add_option("--tol", qo.tol, "rank tolerance of the hierarchical basis")
      ->capture_default_str();
  qcmd->add_option("--export-bundle", qo.export_bundle, "write the analysed hierarchy");
  qcmd->add_option("--kappa", qo.constants.kappa, "estimator reduction factor")
      ->capture_default_str();
  qcmd->add_option("--c-est", qo.constants.c_est, "estimator reduction constant")
      ->capture_default_str();
  qcmd->add_option("--c-rel", qo.constants.c_rel, "reliability constant")->capture_default_str();
  qcmd->add_option("--c-mon", qo.constants.c_mon, "quasi-monotonicity constant")
      ->capture_default_str();

  for (CLI::App* sub : {hcmd, tcmd, qcmd}) {
    sub->add_option("--out-dir", common.out_dir, "output directory")->capture_default_str();
    sub->add_flag("--svg", common.svg, "also write an SVG plot");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*hcmd) return run_hilbert(hil, common);
    if (*tcmd) return run_heat(heat, common);
    return run_qo(qo, common);
  } catch (const InvalidArgument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const NumericalError& e) {
    fmt::print(stderr, "numerical failure: {}\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    fmt::print(stderr, "failure: {}\n", e.what());
    return kExitNumerical;
  }
}
