// estgame command-line front end: solve single instances, sweep the reduced
// leader objective to CSV/SVG, run protocol simulations, brute-force verify
// the analytic solver, and emit the standard four-panel objective plots.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or config error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "estgame/equilibrium.hpp"
#include "estgame/oracle.hpp"
#include "estgame/simulator.hpp"
#include "estgame/sweep.hpp"
#include "output.hpp"

namespace {

using estgame::Equilibrium;
using estgame::GameConstants;
using estgame::GameParams;
using estgame::PolicyPair;
using estgame_cli::fmt_double;
using estgame_cli::Manifest;

struct SolveOpts {
  std::optional<double> k1, k2, alpha1, alpha2, alpha;
  double c1 = 1.0, c2 = 1.0;
  bool swap_roles = false;
};

struct SweepOpts {
  double k1 = 0.0, k2 = 0.0, c1 = 1.0;
  double p1_step = 1e-3;
  std::string out = "sweep.csv";
  std::optional<std::string> svg;
};

struct SimulateOpts {
  double alpha1 = 0.25, alpha2 = 0.25, alpha = 0.0;
  double c1 = 1.0, c2 = 1.0;
  double p1 = 0.0, p2 = 0.0;
  std::uint64_t horizon = 1000000;
  std::uint64_t seed = 12345;
  int age_cap = 64;
  std::string out = "simulate.csv";
};

struct VerifyOpts {
  int instances = 200;
  std::uint64_t seed = 7;
  double grid_step = 1e-3;
  bool include_fixed = false;
  std::optional<std::string> out;
  double gap_tol = 1e-2;
};

struct FiguresOpts {
  std::string out_dir;
  double p1_step = 1e-3;
};

GameConstants resolve_constants(const SolveOpts& o) {
  const bool k_space = o.k1.has_value() || o.k2.has_value();
  const bool alpha_space =
      o.alpha1.has_value() || o.alpha2.has_value() || o.alpha.has_value();
  if (k_space && alpha_space)
    throw std::invalid_argument(
        "mixing --k1/--k2 with --alpha1/--alpha2/--alpha is not allowed");
  if (k_space) {
    if (!o.k1 || !o.k2)
      throw std::invalid_argument("K-space input needs both --k1 and --k2");
    return {*o.k1, *o.k2, o.c1, o.c2};
  }
  if (!o.alpha1 || !o.alpha2 || !o.alpha)
    throw std::invalid_argument(
        "alpha-space input needs --alpha1, --alpha2 and --alpha");
  return derive_constants(GameParams(*o.alpha1, *o.alpha2, *o.alpha, o.c1, o.c2));
}

int run_solve(const SolveOpts& o) {
  GameConstants gc = resolve_constants(o);
  if (o.swap_roles) gc = GameConstants(gc.k2, gc.k1, gc.c2, gc.c1);
  const Equilibrium eq = estgame::solve(gc);

  // Under --swap-roles the solver's "leader" is player 2; report the policy
  // pair in original player naming.
  const double p1_star = o.swap_roles ? eq.policy.p2 : eq.policy.p1;
  const double p2_star = o.swap_roles ? eq.policy.p1 : eq.policy.p2;
  const double j1 =
      o.swap_roles ? eq.follower_value.value : eq.leader_value.value;
  const double j2 =
      o.swap_roles ? eq.leader_value.value : eq.follower_value.value;

  std::cout << "regime: " << to_string(eq.regime) << '\n';
  std::cout << "leader: " << (o.swap_roles ? "P2" : "P1") << '\n';
  std::cout << "p1_star: " << fmt_double(p1_star) << '\n';
  std::cout << "p2_star: " << fmt_double(p2_star) << '\n';
  std::cout << "J1: " << fmt_double(j1) << '\n';
  std::cout << "J2: " << fmt_double(j2) << '\n';
  std::cout << "candidates:\n";
  bool marked = false;
  for (const estgame::Candidate& c : eq.candidates) {
    const bool chosen = !marked && c.policy.p1 == eq.policy.p1 &&
                        c.policy.p2 == eq.policy.p2;
    marked = marked || chosen;
    std::cout << "  leader_p=" << fmt_double(c.policy.p1)
              << " follower_p=" << fmt_double(c.policy.p2)
              << " leader_cost=" << fmt_double(c.leader_value.value)
              << (chosen ? " *" : "") << '\n';
  }
  return 0;
}

// Shared by sweep and figures: emit CSV (and optionally SVG) for one
// constants instance; returns the emitted paths.
std::vector<std::string> emit_sweep(const GameConstants& gc, double p1_step,
                                    const std::filesystem::path& csv_path,
                                    const std::optional<std::filesystem::path>&
                                        svg_path) {
  const estgame::SweepResult sweep = estgame::build_sweep(gc, p1_step);
  estgame_cli::write_sweep_csv(csv_path, sweep);
  std::vector<std::string> written{csv_path.string()};
  if (svg_path) {
    const std::string title = "J1(p1, BR(p1))  K1=" + fmt_double(gc.k1) +
                              "  K2=" + fmt_double(gc.k2) +
                              "  c1=" + fmt_double(gc.c1);
    estgame_cli::write_sweep_svg(*svg_path, sweep, title);
    written.push_back(svg_path->string());
  }
  const estgame::SweepRow& best = sweep.rows[sweep.argmin];
  std::cout << csv_path.string() << ": " << sweep.rows.size()
            << " rows, argmin p1=" << fmt_double(best.p1)
            << " br_p2=" << fmt_double(best.br_p2)
            << " j1=" << fmt_double(best.j1.value) << '\n';
  return written;
}

int run_sweep(const SweepOpts& o) {
  const GameConstants gc(o.k1, o.k2, o.c1, 1.0);
  std::optional<std::filesystem::path> svg;
  if (o.svg) svg = *o.svg;
  Manifest manifest{"sweep",
                    {{"k1", o.k1},
                     {"k2", o.k2},
                     {"c1", o.c1},
                     {"p1_step", o.p1_step},
                     {"out", o.out},
                     {"svg", o.svg ? nlohmann::json(*o.svg)
                                   : nlohmann::json(nullptr)}},
                    std::nullopt,
                    {}};
  manifest.outputs = emit_sweep(gc, o.p1_step, o.out, svg);
  estgame_cli::write_manifest(estgame_cli::manifest_path_for(o.out), manifest);
  return 0;
}

std::string relative_deviation(double empirical, double closed_form) {
  if (empirical == closed_form) return fmt_double(0.0);
  return fmt_double(std::abs(empirical - closed_form) /
                    std::abs(closed_form));
}

int run_simulate(const SimulateOpts& o) {
  const GameParams params(o.alpha1, o.alpha2, o.alpha, o.c1, o.c2);
  const PolicyPair policy(o.p1, o.p2);
  const estgame::SimConfig cfg(params, policy, o.horizon, o.seed, o.age_cap);
  const estgame::SimResult result = estgame::run(cfg);

  estgame_cli::write_simulate_csv(o.out, result);
  Manifest manifest{"simulate",
                    {{"alpha1", o.alpha1},
                     {"alpha2", o.alpha2},
                     {"alpha", o.alpha},
                     {"c1", o.c1},
                     {"c2", o.c2},
                     {"p1", o.p1},
                     {"p2", o.p2},
                     {"horizon", o.horizon},
                     {"age_cap", o.age_cap},
                     {"out", o.out}},
                    o.seed,
                    {o.out}};
  estgame_cli::write_manifest(estgame_cli::manifest_path_for(o.out), manifest);

  // Player 1 tracks walk 2 and vice versa.
  const estgame::ExtendedValue closed1 = average_error(params.alpha2, policy);
  const estgame::ExtendedValue closed2 = average_error(params.alpha1, policy);
  const GameConstants gc = derive_constants(params);
  const auto [emp_j1, emp_j2] = empirical_cost(result, params);

  std::cout << "horizon: " << o.horizon << '\n';
  std::cout << "seed: " << o.seed << '\n';
  std::cout << "divergent: " << (result.divergent ? "true" : "false") << '\n';
  std::cout << "empirical_error_p1: " << fmt_double(result.mean_sq_error[0])
            << '\n';
  std::cout << "closed_form_error_p1: " << fmt_double(closed1.value) << '\n';
  std::cout << "relative_deviation_p1: "
            << relative_deviation(result.mean_sq_error[0], closed1.value)
            << '\n';
  std::cout << "empirical_error_p2: " << fmt_double(result.mean_sq_error[1])
            << '\n';
  std::cout << "closed_form_error_p2: " << fmt_double(closed2.value) << '\n';
  std::cout << "relative_deviation_p2: "
            << relative_deviation(result.mean_sq_error[1], closed2.value)
            << '\n';
  std::cout << "sample_rate_p1: " << fmt_double(result.sample_rate[0]) << '\n';
  std::cout << "sample_rate_p2: " << fmt_double(result.sample_rate[1]) << '\n';
  std::cout << "empirical_cost_j1: " << fmt_double(emp_j1) << '\n';
  std::cout << "empirical_cost_j2: " << fmt_double(emp_j2) << '\n';
  std::cout << "closed_form_cost_j1: "
            << fmt_double(leader_cost(gc, policy).value) << '\n';
  std::cout << "closed_form_cost_j2: "
            << fmt_double(follower_cost(gc, policy).value) << '\n';
  return 0;
}

double value_gap(estgame::ExtendedValue a, estgame::ExtendedValue b) {
  if (a.value == b.value) return 0.0;  // covers equal infinities
  return std::abs(a.value - b.value);
}

int run_verify(const VerifyOpts& o) {
  std::vector<std::pair<double, double>> instances;
  if (o.include_fixed) {
    instances = {{1.0, 1.25}, {1.0, 0.1},  {-0.5, 1.25}, {-2.0, 1.25},
                 {-1.0, -1.0}, {0.0, 0.0}, {2.0, -1.0},  {0.25, -0.5}};
  }
  std::mt19937_64 rng(o.seed);
  for (int i = 0; i < o.instances; ++i) {
    const double k1 = -3.0 + 6.0 * estgame::uniform01(rng);
    const double k2 = -3.0 + 6.0 * estgame::uniform01(rng);
    instances.emplace_back(k1, k2);
  }

  std::vector<estgame_cli::VerifyRow> rows;
  rows.reserve(instances.size());
  int failures = 0;
  for (const auto& [k1, k2] : instances) {
    const GameConstants gc(k1, k2, 1.0, 1.0);
    const Equilibrium analytic = estgame::solve(gc);
    const Equilibrium grid = estgame::grid_se(gc, o.grid_step);
    const double gap = value_gap(analytic.leader_value, grid.leader_value);
    const double tol = o.gap_tol * gc.c1 * (1.0 + std::abs(k1));
    const bool pass = gap <= tol;
    failures += !pass;
    rows.push_back({k1, k2, analytic.policy.p1, analytic.policy.p2,
                    grid.policy.p1, grid.policy.p2, gap, pass});
    std::cout << "k1=" << fmt_double(k1) << " k2=" << fmt_double(k2)
              << " analytic=(" << fmt_double(analytic.policy.p1) << ","
              << fmt_double(analytic.policy.p2) << ") grid=("
              << fmt_double(grid.policy.p1) << ","
              << fmt_double(grid.policy.p2) << ") gap=" << fmt_double(gap)
              << " tol=" << fmt_double(tol) << (pass ? " PASS" : " FAIL")
              << '\n';
  }
  std::cout << "verified " << rows.size() << " instances, " << failures
            << " failed\n";

  if (o.out) {
    estgame_cli::write_verify_csv(*o.out, rows);
    Manifest manifest{"verify",
                      {{"instances", o.instances},
                       {"grid_step", o.grid_step},
                       {"include_fixed", o.include_fixed},
                       {"gap_tol", o.gap_tol},
                       {"out", *o.out}},
                      o.seed,
                      {*o.out}};
    estgame_cli::write_manifest(estgame_cli::manifest_path_for(*o.out),
                                manifest);
  }
  return failures == 0 ? 0 : 1;
}

int run_figures(const FiguresOpts& o) {
  const std::filesystem::path dir(o.out_dir);
  std::filesystem::create_directories(dir);

  struct Panel {
    const char* name;
    double k1, k2;
  };
  const Panel panels[] = {{"panel_a", 1.0, 1.25},
                          {"panel_b", 1.0, 0.1},
                          {"panel_c", -0.5, 1.25},
                          {"panel_d", -2.0, 1.25}};
  Manifest manifest{"figures",
                    {{"out_dir", o.out_dir}, {"p1_step", o.p1_step}},
                    std::nullopt,
                    {}};
  for (const Panel& panel : panels) {
    const GameConstants gc(panel.k1, panel.k2, 1.0, 1.0);
    const auto written =
        emit_sweep(gc, o.p1_step, dir / (std::string(panel.name) + ".csv"),
                   dir / (std::string(panel.name) + ".svg"));
    manifest.outputs.insert(manifest.outputs.end(), written.begin(),
                            written.end());
  }
  estgame_cli::write_manifest(dir / "manifest.json", manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg sampling-game solver and simulator"};
  app.require_subcommand(1);

  SolveOpts solve_opts;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve one instance for its equilibrium");
  solve_cmd->add_option("--k1", solve_opts.k1, "Leader incentive constant");
  solve_cmd->add_option("--k2", solve_opts.k2, "Follower incentive constant");
  solve_cmd->add_option("--alpha1", solve_opts.alpha1,
                        "Walk step probability of player 1, in (0, 0.5)");
  solve_cmd->add_option("--alpha2", solve_opts.alpha2,
                        "Walk step probability of player 2, in (0, 0.5)");
  solve_cmd->add_option("--alpha", solve_opts.alpha,
                        "Information revelation weight, >= 0");
  solve_cmd->add_option("--c1", solve_opts.c1, "Leader sampling cost");
  solve_cmd->add_option("--c2", solve_opts.c2, "Follower sampling cost");
  solve_cmd->add_flag("--swap-roles", solve_opts.swap_roles,
                      "Let player 2 lead and player 1 follow");

  SweepOpts sweep_opts;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Tabulate the reduced leader objective over p1");
  sweep_cmd->add_option("--k1", sweep_opts.k1)->required();
  sweep_cmd->add_option("--k2", sweep_opts.k2)->required();
  sweep_cmd->add_option("--c1", sweep_opts.c1);
  sweep_cmd->add_option("--p1-step", sweep_opts.p1_step);
  sweep_cmd->add_option("--out", sweep_opts.out, "CSV output path");
  sweep_cmd->add_option("--svg", sweep_opts.svg, "Also write an SVG plot");

  SimulateOpts sim_opts;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Run the stochastic protocol");
  sim_cmd->add_option("--alpha1", sim_opts.alpha1);
  sim_cmd->add_option("--alpha2", sim_opts.alpha2);
  sim_cmd->add_option("--alpha", sim_opts.alpha);
  sim_cmd->add_option("--c1", sim_opts.c1);
  sim_cmd->add_option("--c2", sim_opts.c2);
  sim_cmd->add_option("--p1", sim_opts.p1)->required();
  sim_cmd->add_option("--p2", sim_opts.p2)->required();
  sim_cmd->add_option("-T,--horizon", sim_opts.horizon);
  sim_cmd->add_option("--seed", sim_opts.seed);
  sim_cmd->add_option("--age-cap", sim_opts.age_cap);
  sim_cmd->add_option("--out", sim_opts.out, "CSV output path");

  VerifyOpts verify_opts;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Compare the analytic solver against the grid oracle");
  verify_cmd->add_option("--instances", verify_opts.instances)
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--seed", verify_opts.seed);
  verify_cmd->add_option("--grid-step", verify_opts.grid_step);
  verify_cmd->add_flag("--include-fixed", verify_opts.include_fixed,
                       "Prepend a fixed set of reference instances");
  verify_cmd->add_option("--out", verify_opts.out, "CSV output path");
  verify_cmd->add_option("--gap-tol", verify_opts.gap_tol,
                         "Leader-value gap tolerance factor");

  FiguresOpts figures_opts;
  CLI::App* figures_cmd = app.add_subcommand(
      "figures", "Emit the four standard objective panels as CSV/SVG");
  figures_cmd->add_option("--out-dir", figures_opts.out_dir)->required();
  figures_cmd->add_option("--p1-step", figures_opts.p1_step);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_opts);
    if (sweep_cmd->parsed()) return run_sweep(sweep_opts);
    if (sim_cmd->parsed()) return run_simulate(sim_opts);
    if (verify_cmd->parsed()) return run_verify(verify_opts);
    if (figures_cmd->parsed()) return run_figures(figures_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
