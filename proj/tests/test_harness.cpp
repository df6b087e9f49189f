#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "mocpde/harness.hpp"

using namespace mocpde;

namespace {

ExperimentConfig small_heat_config() {
  ExperimentConfig cfg;
  cfg.pair = "heat";
  cfg.grid.dim = 2;
  cfg.grid.extent = {2.0 * std::numbers::pi, 2.0 * std::numbers::pi};
  cfg.grid.nodes = {48, 48};
  cfg.grid.boundary = BoundaryMode::periodic;
  cfg.initial.kind = "random-bounded";
  cfg.initial.osc = 2.0;
  cfg.initial.seed = 11;
  cfg.snapshots = {0.05, 0.1};
  cfg.target.kind = "erf";
  cfg.target.M = 2.0;
  cfg.bins = 32;
  return cfg;
}

}  // namespace

TEST_CASE("make_initial: generators honor their declarations") {
  GridSpec grid;
  grid.dim = 1;
  grid.extent = {2.0 * std::numbers::pi, 0.0};
  grid.nodes = {64, 1};

  InitialSpec rnd;
  rnd.kind = "random-bounded";
  rnd.osc = 2.0;
  rnd.seed = 3;
  const GridField u = make_initial(grid, rnd);
  CHECK(field_osc(u) == doctest::Approx(2.0));  // planted extremes
  for (double v : u.values) CHECK(std::abs(v) <= 1.0 + 1e-12);

  InitialSpec sq;
  sq.kind = "square-wave";
  sq.osc = 2.0;
  const GridField w = make_initial(grid, sq);
  CHECK(field_osc(w) == doctest::Approx(2.0));
  CHECK(w.at(0) == 1.0);
  CHECK(w.at(40) == -1.0);

  InitialSpec sine;
  sine.kind = "sin-mode";
  sine.amplitude = 0.7;
  const GridField s = make_initial(grid, sine);
  CHECK(s.at(16) == doctest::Approx(0.7).epsilon(1e-12));  // sin at x = pi/2

  InitialSpec bad;
  bad.kind = "nope";
  CHECK_THROWS_AS(make_initial(grid, bad), error);
}

TEST_CASE("run_comparison: heat with random data stays below the erf envelope") {
  const auto rep = run_comparison(small_heat_config());
  CHECK(rep.pass);
  CHECK(rep.comparisons.size() == 2);
  for (const auto& c : rep.comparisons) {
    CHECK(c.pass);
    CHECK(c.bins_checked > 0);
  }
}

TEST_CASE("run_comparison: proper operator preserves the initial modulus") {
  ExperimentConfig cfg = small_heat_config();
  cfg.pair = "proper";
  cfg.target.kind = "initial";
  cfg.snapshots = {0.05, 0.15};
  const auto rep = run_comparison(cfg);
  CHECK(rep.pass);
}

TEST_CASE("run_comparison: hypothesis violation aborts before solving") {
  ExperimentConfig cfg = small_heat_config();
  cfg.target.M = 0.5;  // target initial profile 0.25 < omega(., 0) = 1
  try {
    run_comparison(cfg);
    FAIL("expected hypothesis failure");
  } catch (const error& e) {
    CHECK(e.code() == errc::hypothesis_failed);
  }
}

TEST_CASE("run_comparison: end-to-end determinism") {
  const auto a = run_comparison(small_heat_config()).to_json().dump();
  const auto b = run_comparison(small_heat_config()).to_json().dump();
  CHECK(a == b);
}

TEST_CASE("check_gradient_bounds: erf sharpness window on the 1D square wave") {
  ExperimentConfig cfg;
  cfg.pair = "heat";
  cfg.grid.dim = 1;
  cfg.grid.nodes = {512, 1};
  cfg.initial.kind = "square-wave";
  cfg.initial.osc = 2.0;
  const GridField u0 = make_initial(cfg.grid, cfg.initial);
  const auto traj = solve(u0, builtin_pair("heat").F, 0.01, {0.01});
  const auto rep = check_gradient_bounds(traj, "erf-gradient", 2.0, 1.0, 0.0);
  REQUIRE(rep.gradients.size() == 1);
  const auto& g = rep.gradients.front();
  CHECK(g.ratio >= 0.9);
  CHECK(g.ratio <= 1.0);
  CHECK(g.pass);
}

TEST_CASE("check_gradient_bounds: constant data gives ratio zero") {
  GridField u0 = make_grid(1, {2.0 * std::numbers::pi, 0.0}, {64, 1}, BoundaryMode::periodic);
  for (auto& v : u0.values) v = 0.4;
  const auto traj = solve(u0, builtin_pair("heat").F, 0.05, {0.05});
  const auto rep = check_gradient_bounds(traj, "erf-gradient", 2.0, 1.0, 0.05);
  CHECK(rep.gradients.front().ratio == 0.0);
  CHECK_THROWS_AS(check_gradient_bounds(traj, "unknown-kind", 2.0, 1.0, 0.05), error);
}

TEST_CASE("run_sharpness: 1D heat square wave tracks the erf target") {
  ExperimentConfig cfg;
  cfg.pair = "heat";
  cfg.grid.dim = 1;
  cfg.grid.nodes = {1024, 1};
  cfg.initial.kind = "square-wave";
  cfg.initial.osc = 2.0;
  cfg.snapshots = {0.005, 0.02, 0.05};
  cfg.target.kind = "erf";
  cfg.target.M = 2.0;
  cfg.bins = 64;
  const auto rep = run_sharpness(cfg);
  CHECK(rep.sup_ratio >= 0.95);
  CHECK(rep.sup_ratio <= 1.001);

  ExperimentConfig bad = cfg;
  bad.initial.kind = "sin-mode";
  CHECK_THROWS_AS(run_sharpness(bad), error);
}

TEST_CASE("trajectory CSV round-trip preserves geometry and values") {
  const auto dir = std::filesystem::temp_directory_path() / "mocpde_traj_test";
  std::filesystem::remove_all(dir);

  GridField u0 = make_grid(2, {1.0, 1.0}, {8, 8}, BoundaryMode::neumann);
  Rng rng(5);
  for (auto& v : u0.values) v = rng.uniform(-1.0, 1.0);
  const auto traj = solve(u0, builtin_pair("heat").F, 0.01, {0.005});
  write_trajectory(dir.string(), traj);
  const auto loaded = read_trajectory(dir.string());
  REQUIRE(loaded.snapshots.size() == traj.snapshots.size());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    CHECK(loaded.snapshots[k].values == traj.snapshots[k].values);  // %.17g round-trip
    CHECK(loaded.snapshots[k].boundary == BoundaryMode::neumann);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("config JSON round-trip") {
  const ExperimentConfig cfg = small_heat_config();
  const ExperimentConfig again = ExperimentConfig::from_json(cfg.to_json());
  CHECK(again.to_json() == cfg.to_json());
  CHECK(again.pair == "heat");
  CHECK(again.grid.nodes[0] == 48);
  CHECK(again.snapshots == cfg.snapshots);
}

TEST_CASE("solve1d comparison target: heat against its own 1D run") {
  // The 2D solution's modulus must stay below the 1D square-wave evolution of
  // the same operator (the 1D run is, up to discretization, the erf profile).
  ExperimentConfig cfg = small_heat_config();
  cfg.target.kind = "solve1d";
  cfg.target.f = {{"kind", "linear-1d"}, {"lambda0", 1.0}};
  cfg.target.phi0 = "const";
  cfg.target.S = 8.0;
  cfg.target.nodes = 256;
  const auto rep = run_comparison(cfg);
  CHECK(rep.pass);
}

TEST_CASE("run_sharpness: 2D square wave matches the 1D window; coarse degrades") {
  ExperimentConfig cfg;
  cfg.pair = "heat";
  cfg.grid.dim = 2;
  cfg.grid.extent = {2.0 * std::numbers::pi, 2.0 * std::numbers::pi};
  cfg.grid.nodes = {128, 128};
  cfg.initial.kind = "square-wave";
  cfg.initial.osc = 2.0;
  cfg.snapshots = {0.02, 0.05};
  cfg.target.kind = "erf";
  cfg.target.M = 2.0;
  cfg.bins = 64;
  const auto rep = run_sharpness(cfg);
  // The solution is one-dimensional; the subsampled extraction keeps the
  // ratio in the fine-grid window.
  CHECK(rep.sup_ratio >= 0.9);
  CHECK(rep.sup_ratio <= 1.001);

  ExperimentConfig coarse = cfg;
  coarse.grid.dim = 1;
  coarse.grid.nodes = {32, 1};
  coarse.snapshots = {0.005};
  const auto deg = run_sharpness(coarse);
  // Reported, not asserted: the coarse ratio is recorded for inspection.
  INFO("coarse 32-node sharpness ratio ", deg.sup_ratio);
  CHECK(deg.sup_ratio >= 0.0);
}

TEST_CASE("make_initial: custom CSV values load in node order") {
  const auto dir = std::filesystem::temp_directory_path() / "mocpde_csv_test";
  std::filesystem::remove_all(dir);

  GridSpec grid;
  grid.dim = 1;
  grid.extent = {1.0, 0.0};
  grid.nodes = {16, 1};
  GridField ref = grid.build();
  for (int i = 0; i < 16; ++i) ref.at(i) = 0.1 * i;
  Trajectory traj;
  traj.snapshots.push_back(ref);
  traj.metadata = {{"grid", ref.geometry_json()}};
  write_trajectory(dir.string(), traj);

  InitialSpec spec;
  spec.kind = "custom-csv";
  spec.path = (dir / "t_0.000000.csv").string();
  const GridField loaded = make_initial(grid, spec);
  CHECK(loaded.values == ref.values);
  std::filesystem::remove_all(dir);
}
