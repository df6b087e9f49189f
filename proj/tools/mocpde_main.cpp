// mocpde command-line tool: operator catalog inspection, structure-condition
// checking, grid and 1D solvers, modulus extraction, closed-form profiles,
// and the comparison/sharpness experiment runners.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mocpde/harness.hpp"
#include "mocpde/structure_check.hpp"

using namespace mocpde;

namespace {

namespace fs = std::filesystem;

int cmd_catalog(bool verbose) {
  for (const auto& pair : builtin_pairs()) {
    if (verbose) {
      json j{{"name", pair.name},
             {"note", pair.note},
             {"F", pair.F.descriptor},
             {"f", pair.f.descriptor}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::printf("%-24s %s\n", pair.name.c_str(), pair.note.c_str());
    }
  }
  return 0;
}

struct ScOptions {
  std::string pair;
  long samples = 10000;
  int dim = 2;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string grad_sign = "nonneg";
  std::string mode = "mixed";
  std::string out;
};

int cmd_check_sc(const ScOptions& opt) {
  const GradSign gs = opt.grad_sign == "any" ? GradSign::any : GradSign::nonneg;
  ScSampleMode mode = ScSampleMode::mixed;
  if (opt.mode == "interior") mode = ScSampleMode::interior;
  if (opt.mode == "boundary") mode = ScSampleMode::boundary;

  SCReport rep;
  if (opt.pair == "negative-control") {
    // Diagnostic pair F = -tr X with the wrong companion f = -2 phi''.
    const auto& heat = builtin_pair("heat");
    const auto wrong = OneDimOp::linear({2.0, 0.0, 0.0, 0.0, nullptr});
    rep = check_pair(heat.F, wrong, opt.dim, opt.samples, opt.seed, opt.tol, gs, mode);
    rep.pair_name = "negative-control";
  } else {
    const auto& pair = builtin_pair(opt.pair);
    rep = check_pair(pair.F, pair.f, opt.dim, opt.samples, opt.seed, opt.tol, gs, mode);
    rep.pair_name = pair.name;
  }

  const json j = rep.to_json();
  if (opt.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(opt.out, j);
    std::printf("%s: %ld violations in %ld samples (worst slack %.3e)\n", rep.pair_name.c_str(),
                rep.violation_count, rep.samples, rep.worst_slack);
  }
  return rep.violation_count == 0 ? 0 : 1;
}

int cmd_check_all(long samples, std::uint64_t seed, double tol, int dim, const std::string& out) {
  const auto reports = check_all_builtin(samples, seed, tol, dim);
  json j = json::object();
  bool all_pass = true;
  for (const auto& [name, rep] : reports) {
    j[name] = rep.to_json();
    all_pass = all_pass && rep.passed();
    std::printf("%-24s %s (%ld violations, worst slack %.3e)\n", name.c_str(),
                rep.passed() ? "pass" : "FAIL", rep.violation_count, rep.worst_slack);
  }
  if (!out.empty()) write_json_file(out, j);
  return all_pass ? 0 : 1;
}

int cmd_solve(const std::string& config_path, const std::string& out_dir, std::uint64_t seed,
              bool seed_set) {
  ExperimentConfig cfg = ExperimentConfig::from_json(read_json_file(config_path));
  if (seed_set) cfg.initial.seed = seed;
  const OperatorSpec op = resolve_operator(cfg);
  const GridField u0 = make_initial(cfg.grid, cfg.initial);
  double t_max = 0.0;
  for (double t : cfg.snapshots) t_max = std::max(t_max, t);
  if (!(t_max > 0.0)) fail(errc::config, "solve: config needs positive snapshot times");
  Trajectory traj = solve(u0, op, t_max, cfg.snapshots);
  traj.metadata["config"] = cfg.to_json();
  write_trajectory(out_dir, traj);
  std::printf("wrote %zu snapshots to %s\n", traj.snapshots.size(), out_dir.c_str());
  return 0;
}

int cmd_moc(const std::string& traj_dir, int bins, const std::string& out_dir) {
  const Trajectory traj = read_trajectory(traj_dir);
  fs::create_directories(out_dir);
  for (const auto& snap : traj.snapshots) {
    const ModulusCurve curve = compute_moc(snap, bins);
    char name[64];
    std::snprintf(name, sizeof(name), "moc_t_%.6f.csv", snap.time);
    write_curve_csv(out_dir + "/" + name, curve);
    std::printf("t = %.6f: %d bins, stride %d\n", snap.time, curve.bins, curve.stride);
  }
  return 0;
}

struct Solve1dOptions {
  std::string f_name = "heat";
  std::string phi0 = "const:1";
  double S = 10.0;
  int nodes = 400;
  double t_end = 0.25;
  std::vector<double> snapshots;
  std::string left_bc = "odd";
  std::string out;
};

int cmd_solve1d(const Solve1dOptions& opt) {
  OneDimOp f;
  if (opt.f_name.rfind("{", 0) == 0)
    f = onedim_from_json(json::parse(opt.f_name));
  else
    f = builtin_pair(opt.f_name).f;

  std::function<double(double)> phi0;
  if (opt.phi0.rfind("const:", 0) == 0) {
    const double v = std::stod(opt.phi0.substr(6));
    phi0 = [v](double) { return v; };
  } else if (opt.phi0.rfind("linear:", 0) == 0) {
    const double c = std::stod(opt.phi0.substr(7));
    phi0 = [c](double s) { return c * s; };
  } else {
    fail(errc::config, "phi0 must be const:<v> or linear:<c>");
  }

  const LeftBc left = opt.left_bc == "dirichlet" ? LeftBc::dirichlet_zero : LeftBc::odd_reflection;
  const auto profiles =
      solve_1d(f, phi0, opt.S, left, RightBc::neumann_zero, opt.t_end, opt.nodes, opt.snapshots);
  fs::create_directories(opt.out);
  for (const auto& p : profiles) {
    char name[64];
    std::snprintf(name, sizeof(name), "t_%.6f.csv", p.t);
    write_profile_csv(opt.out + "/" + name, p);
  }
  std::printf("wrote %zu profiles to %s\n", profiles.size(), opt.out.c_str());
  return 0;
}

struct ProfileOptions {
  std::string kind = "erf";
  double M = 2.0;
  double p = 2.0;
  double kappa = -1.0;
  double t = 0.25;
  double S = 5.0;
  int points = 200;
  std::string out;
};

int cmd_profile(const ProfileOptions& opt) {
  Profile1D prof;
  prof.t = opt.t;
  for (int i = 0; i <= opt.points; ++i) {
    const double s = opt.S * i / opt.points;
    prof.s.push_back(s);
    if (opt.kind == "erf")
      prof.phi.push_back(erf_profile(opt.M, s, opt.t));
    else if (opt.kind == "plaplace")
      prof.phi.push_back(plaplace_profile(opt.p, opt.M, s, opt.t));
    else if (opt.kind == "tkappa")
      prof.phi.push_back(t_kappa(opt.kappa, s));
    else
      fail(errc::config, "profile kind must be erf, plaplace or tkappa");
  }
  if (opt.out.empty()) {
    for (std::size_t i = 0; i < prof.s.size(); ++i)
      std::printf("%.17g,%.17g\n", prof.s[i], prof.phi[i]);
  } else {
    write_profile_csv(opt.out, prof);
  }
  return 0;
}

int cmd_verify(const std::string& config_path, const std::string& out_dir, std::uint64_t seed,
               bool seed_set) {
  ExperimentConfig cfg = ExperimentConfig::from_json(read_json_file(config_path));
  if (seed_set) cfg.initial.seed = seed;
  const VerifyReport rep = run_comparison(cfg);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_json_file(out_dir + "/report.json", rep.to_json());
  }
  for (const auto& c : rep.comparisons)
    std::printf("t = %-8.4f %s (worst excess %.3e at s = %.4f, %ld bins)\n", c.t,
                c.pass ? "pass" : "FAIL", c.worst_excess, c.worst_s, c.bins_checked);
  for (const auto& g : rep.gradients)
    std::printf("t = %-8.4f %-12s %s (ratio %.4f)\n", g.t, g.kind.c_str(),
                g.pass ? "pass" : "FAIL", g.ratio);
  std::printf("overall: %s\n", rep.pass ? "pass" : "FAIL");
  return rep.pass ? 0 : 1;
}

int cmd_sharpness(const std::string& config_path, const std::string& out_dir) {
  const ExperimentConfig cfg = ExperimentConfig::from_json(read_json_file(config_path));
  const SharpnessReport rep = run_sharpness(cfg);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_json_file(out_dir + "/sharpness.json", rep.to_json());
  }
  for (const auto& [t, ratio] : rep.per_snapshot)
    std::printf("t = %-8.4f sup ratio %.6f\n", t, ratio);
  std::printf("sup over snapshots: %.6f\n", rep.sup_ratio);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mocpde: modulus-of-continuity laboratory for fully nonlinear parabolic equations"};
  app.require_subcommand(1);

  bool catalog_verbose = false;
  auto* catalog = app.add_subcommand("catalog", "List the built-in operator pairs");
  catalog->add_flag("-v,--verbose", catalog_verbose, "Print full JSON descriptors");

  ScOptions sc;
  auto* check_sc = app.add_subcommand("check-sc", "Monte Carlo structure-condition check");
  check_sc->add_option("--pair", sc.pair, "Builtin pair name or 'negative-control'")->required();
  check_sc->add_option("--samples", sc.samples, "Sample count");
  check_sc->add_option("--dim", sc.dim, "Spatial dimension");
  check_sc->add_option("--seed", sc.seed, "Random seed");
  check_sc->add_option("--tol", sc.tol, "Relative violation tolerance");
  check_sc->add_option("--grad-sign", sc.grad_sign, "nonneg (default) or any");
  check_sc->add_option("--mode", sc.mode, "mixed (default), interior or boundary");
  check_sc->add_option("--out", sc.out, "Write the JSON report here");

  long all_samples = 10000;
  std::uint64_t all_seed = 0;
  double all_tol = 1e-8;
  int all_dim = 2;
  std::string all_out;
  auto* check_all = app.add_subcommand("check-all", "Structure-condition sweep over all pairs");
  check_all->add_option("--samples", all_samples, "Samples per pair");
  check_all->add_option("--seed", all_seed, "Random seed");
  check_all->add_option("--tol", all_tol, "Relative violation tolerance");
  check_all->add_option("--dim", all_dim, "Spatial dimension");
  check_all->add_option("--out", all_out, "Write the JSON report here");

  std::string solve_config, solve_out = "traj";
  std::uint64_t solve_seed = 0;
  auto* solve_cmd = app.add_subcommand("solve", "Evolve a configured experiment, write CSVs");
  solve_cmd->add_option("--config", solve_config, "Experiment config JSON")->required();
  solve_cmd->add_option("--out", solve_out, "Output directory");
  auto* solve_seed_opt = solve_cmd->add_option("--seed", solve_seed, "Override the initial-data seed");

  std::string moc_in, moc_out = "moc";
  int moc_bins = 64;
  auto* moc_cmd = app.add_subcommand("moc", "Extract modulus-of-continuity curves");
  moc_cmd->add_option("--in", moc_in, "Trajectory directory")->required();
  moc_cmd->add_option("--bins", moc_bins, "Half-distance bins");
  moc_cmd->add_option("--out", moc_out, "Output directory");

  Solve1dOptions s1;
  auto* solve1d_cmd = app.add_subcommand("solve1d", "Evolve the 1D comparison equation");
  solve1d_cmd->add_option("--f", s1.f_name, "Builtin pair name (its f) or inline JSON");
  solve1d_cmd->add_option("--phi0", s1.phi0, "const:<v> or linear:<c>");
  solve1d_cmd->add_option("--S", s1.S, "Domain size");
  solve1d_cmd->add_option("--nodes", s1.nodes, "Node count");
  solve1d_cmd->add_option("--t-end", s1.t_end, "Final time");
  solve1d_cmd->add_option("--snapshots", s1.snapshots, "Output times");
  solve1d_cmd->add_option("--left-bc", s1.left_bc, "odd (default) or dirichlet");
  solve1d_cmd->add_option("--out", s1.out, "Output directory")->required();

  ProfileOptions pr;
  auto* profile_cmd = app.add_subcommand("profile", "Closed-form profiles as CSV");
  profile_cmd->add_option("--kind", pr.kind, "erf, plaplace or tkappa");
  profile_cmd->add_option("--M", pr.M, "Oscillation M");
  profile_cmd->add_option("--p", pr.p, "p exponent (plaplace)");
  profile_cmd->add_option("--kappa", pr.kappa, "Curvature (tkappa)");
  profile_cmd->add_option("--t", pr.t, "Time");
  profile_cmd->add_option("--S", pr.S, "Max s");
  profile_cmd->add_option("--points", pr.points, "Sample count");
  profile_cmd->add_option("--out", pr.out, "Output CSV (stdout if omitted)");

  std::string verify_config, verify_out;
  std::uint64_t verify_seed = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run a comparison experiment end to end");
  verify_cmd->add_option("--config", verify_config, "Experiment config JSON")->required();
  verify_cmd->add_option("--out", verify_out, "Report directory");
  auto* verify_seed_opt =
      verify_cmd->add_option("--seed", verify_seed, "Override the initial-data seed");

  std::string sharp_config, sharp_out;
  auto* sharp_cmd = app.add_subcommand("sharpness", "Square-wave sharpness ratio");
  sharp_cmd->add_option("--config", sharp_config, "Experiment config JSON")->required();
  sharp_cmd->add_option("--out", sharp_out, "Report directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (catalog->parsed()) return cmd_catalog(catalog_verbose);
    if (check_sc->parsed()) return cmd_check_sc(sc);
    if (check_all->parsed()) return cmd_check_all(all_samples, all_seed, all_tol, all_dim, all_out);
    if (solve_cmd->parsed()) return cmd_solve(solve_config, solve_out, solve_seed, !solve_seed_opt->empty());
    if (moc_cmd->parsed()) return cmd_moc(moc_in, moc_bins, moc_out);
    if (solve1d_cmd->parsed()) return cmd_solve1d(s1);
    if (profile_cmd->parsed()) return cmd_profile(pr);
    if (verify_cmd->parsed()) return cmd_verify(verify_config, verify_out, verify_seed, !verify_seed_opt->empty());
    if (sharp_cmd->parsed()) return cmd_sharpness(sharp_config, sharp_out);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
