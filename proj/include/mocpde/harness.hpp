// Experiment runner: ties the grid solver, modulus extraction and the 1D
// profiles into comparison and gradient-bound verification runs, and owns
// configuration parsing and CSV/JSON reporting.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mocpde/modulus.hpp"
#include "mocpde/onedim.hpp"
#include "mocpde/pde_solver.hpp"

namespace mocpde {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct GridSpec {
  int dim = 1;
  std::array<double, 2> extent{2.0 * std::numbers::pi, 2.0 * std::numbers::pi};
  std::array<int, 2> nodes{256, 1};
  BoundaryMode boundary = BoundaryMode::periodic;

  GridField build() const;
  static GridSpec from_json(const json& j);
  json to_json() const;
};

// Named initial-data generators. `osc` declares the data oscillation M; the
// random generator plants one +M/2 and one -M/2 node so the declaration is
// exact.
struct InitialSpec {
  std::string kind = "random-bounded";  // sin-mode | square-wave | random-bounded | custom-csv
  double osc = 2.0;                     // M
  double amplitude = 1.0;               // sin-mode
  std::array<int, 2> mode{1, 0};        // sin-mode wavenumbers
  int axis = 0;                         // square-wave axis
  std::uint64_t seed = 0;               // random-bounded
  std::string path;                     // custom-csv

  static InitialSpec from_json(const json& j);
  json to_json() const;
};

GridField make_initial(const GridSpec& grid, const InitialSpec& initial);

// Comparison target phi(s, t); value(s, 0) is the initial 1D profile whose
// domination of omega(., 0) is the run hypothesis.
struct TargetSpec {
  std::string kind = "erf";  // erf | plaplace | solve1d | initial
  double M = 2.0;
  double lambda = 1.0;  // erf: phi = (M/2) erf(s / (2 sqrt(lambda t)))
  double p = 2.0;       // plaplace
  json f;               // solve1d: one-dimensional operator descriptor
  std::string phi0 = "const";  // solve1d initial datum: const (= M/2) | sin-bump
  double S = 10.0;             // solve1d domain size
  int nodes = 400;             // solve1d resolution

  static TargetSpec from_json(const json& j);
  json to_json() const;
};

struct BoundSpec {
  std::string kind;     // erf-gradient | p-gradient | mcf-exp
  double p = 2.0;       // p-gradient
  double lambda = 1.0;  // erf-gradient

  static BoundSpec from_json(const json& j);
  json to_json() const;
};

struct Tolerances {
  double rel = 0.05;  // multiplicative slack on the target profile
  double abs = -1.0;  // absolute floor; negative means 0.01 * M

  double abs_floor(double M) const { return abs >= 0.0 ? abs : 0.01 * M; }
};

struct ExperimentConfig {
  std::string pair = "heat";  // builtin pair name
  json op_override;           // optional full operator descriptor
  GridSpec grid;
  InitialSpec initial;
  std::vector<double> snapshots{0.1};
  TargetSpec target;
  std::vector<BoundSpec> bounds;
  Tolerances tol;
  int bins = 64;
  std::uint64_t seed = 0;

  static ExperimentConfig from_json(const json& j);
  json to_json() const;
};

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct SnapshotVerdict {
  double t = 0.0;
  bool pass = false;
  double worst_excess = 0.0;
  double worst_s = 0.0;
  long bins_checked = 0;
  long thin_bins = 0;
};

struct GradientVerdict {
  double t = 0.0;
  std::string kind;
  double measured = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<SnapshotVerdict> comparisons;
  std::vector<GradientVerdict> gradients;
  bool pass = false;
  json meta;

  json to_json() const;
};

struct SharpnessReport {
  double sup_ratio = 0.0;
  std::vector<std::pair<double, double>> per_snapshot;  // (t, sup ratio at t)
  json meta;

  json to_json() const;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Resolves the configured operator (builtin pair or override descriptor).
OperatorSpec resolve_operator(const ExperimentConfig& cfg);

// Solves the configured experiment and checks, per snapshot, that the
// extracted modulus stays below (1 + rel) * target + abs. The target's
// initial profile must dominate omega(., 0); otherwise errc::hypothesis_failed
// is thrown and nothing runs. Configured gradient bounds are checked on the
// same trajectory.
VerifyReport run_comparison(const ExperimentConfig& cfg);

// Gradient-bound check on an existing trajectory. Kinds:
//   erf-gradient: |Du| <= M / (2 sqrt(pi lambda t))
//   p-gradient:   |Du| <= M^{2/p} t^{-1/p} / (2 R_p F_p(inf))
//   mcf-exp:      1 + |Du|^2 <= exp(2 M^2 / t)
// A snapshot passes when measured / bound <= 1 + tol.
VerifyReport check_gradient_bounds(const Trajectory& traj, const std::string& kind, double M,
                                   double param, double tol);

// Sup over snapshots and bins of omega / target at matched (s, t) for
// square-wave initial data; bins where the target is below 0.05 * M are
// excluded to keep the ratio well-defined.
SharpnessReport run_sharpness(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// File I/O (CSV trajectories, curves, JSON reports)
// ---------------------------------------------------------------------------

void write_trajectory(const std::string& dir, const Trajectory& traj);
Trajectory read_trajectory(const std::string& dir);
void write_curve_csv(const std::string& path, const ModulusCurve& curve);
void write_profile_csv(const std::string& path, const Profile1D& profile);
void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

}  // namespace mocpde
