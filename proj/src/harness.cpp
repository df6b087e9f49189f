#include "mocpde/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace mocpde {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

std::array<double, 2> parse_extent(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  std::array<double, 2> e{0.0, 0.0};
  for (std::size_t i = 0; i < std::min<std::size_t>(2, j.size()); ++i) e[i] = j[i];
  return e;
}

std::array<int, 2> parse_nodes(const json& j) {
  if (j.is_number()) return {j.get<int>(), 1};
  std::array<int, 2> n{0, 1};
  for (std::size_t i = 0; i < std::min<std::size_t>(2, j.size()); ++i) n[i] = j[i];
  return n;
}

}  // namespace

GridField GridSpec::build() const { return make_grid(dim, extent, nodes, boundary); }

GridSpec GridSpec::from_json(const json& j) {
  GridSpec g;
  g.dim = j.value("dim", 1);
  if (j.contains("extent")) g.extent = parse_extent(j.at("extent"));
  if (j.contains("nodes")) g.nodes = parse_nodes(j.at("nodes"));
  if (g.dim == 1) g.nodes[1] = 1;
  const std::string b = j.value("boundary", "periodic");
  if (b == "periodic")
    g.boundary = BoundaryMode::periodic;
  else if (b == "neumann")
    g.boundary = BoundaryMode::neumann;
  else
    fail(errc::config, "grid boundary must be 'periodic' or 'neumann'");
  return g;
}

json GridSpec::to_json() const {
  return {{"dim", dim},
          {"extent", dim == 2 ? json{extent[0], extent[1]} : json{extent[0]}},
          {"nodes", dim == 2 ? json{nodes[0], nodes[1]} : json{nodes[0]}},
          {"boundary", boundary == BoundaryMode::periodic ? "periodic" : "neumann"}};
}

InitialSpec InitialSpec::from_json(const json& j) {
  InitialSpec s;
  s.kind = j.value("kind", "random-bounded");
  s.osc = j.value("osc", j.value("M", 2.0));
  s.amplitude = j.value("amplitude", 1.0);
  if (j.contains("mode")) {
    const auto m = j.at("mode");
    for (std::size_t i = 0; i < std::min<std::size_t>(2, m.size()); ++i) s.mode[i] = m[i];
  }
  s.axis = j.value("axis", 0);
  s.seed = j.value("seed", 0ULL);
  s.path = j.value("path", std::string{});
  return s;
}

json InitialSpec::to_json() const {
  return {{"kind", kind},       {"osc", osc},   {"amplitude", amplitude},
          {"mode", {mode[0], mode[1]}}, {"axis", axis}, {"seed", seed},
          {"path", path}};
}

TargetSpec TargetSpec::from_json(const json& j) {
  TargetSpec t;
  t.kind = j.value("kind", "erf");
  t.M = j.value("M", 2.0);
  t.lambda = j.value("lambda", 1.0);
  t.p = j.value("p", 2.0);
  if (j.contains("f")) t.f = j.at("f");
  t.phi0 = j.value("phi0", "const");
  t.S = j.value("S", 10.0);
  t.nodes = j.value("nodes", 400);
  return t;
}

json TargetSpec::to_json() const {
  json j{{"kind", kind}, {"M", M}, {"lambda", lambda}, {"p", p},
         {"phi0", phi0}, {"S", S}, {"nodes", nodes}};
  if (!f.is_null()) j["f"] = f;
  return j;
}

BoundSpec BoundSpec::from_json(const json& j) {
  BoundSpec b;
  b.kind = j.at("kind");
  b.p = j.value("p", 2.0);
  b.lambda = j.value("lambda", 1.0);
  return b;
}

json BoundSpec::to_json() const { return {{"kind", kind}, {"p", p}, {"lambda", lambda}}; }

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  c.pair = j.value("pair", "heat");
  if (j.contains("operator")) c.op_override = j.at("operator");
  if (j.contains("grid")) c.grid = GridSpec::from_json(j.at("grid"));
  if (j.contains("initial")) c.initial = InitialSpec::from_json(j.at("initial"));
  if (j.contains("snapshots")) c.snapshots = j.at("snapshots").get<std::vector<double>>();
  if (j.contains("target")) c.target = TargetSpec::from_json(j.at("target"));
  if (j.contains("bounds"))
    for (const auto& b : j.at("bounds")) c.bounds.push_back(BoundSpec::from_json(b));
  if (j.contains("tolerances")) {
    c.tol.rel = j.at("tolerances").value("rel", 0.05);
    c.tol.abs = j.at("tolerances").value("abs", -1.0);
  }
  c.bins = j.value("bins", 64);
  c.seed = j.value("seed", 0ULL);
  return c;
}

json ExperimentConfig::to_json() const {
  json j{{"pair", pair},
         {"grid", grid.to_json()},
         {"initial", initial.to_json()},
         {"snapshots", snapshots},
         {"target", target.to_json()},
         {"tolerances", {{"rel", tol.rel}, {"abs", tol.abs}}},
         {"bins", bins},
         {"seed", seed}};
  if (!op_override.is_null()) j["operator"] = op_override;
  json bs = json::array();
  for (const auto& b : bounds) bs.push_back(b.to_json());
  j["bounds"] = bs;
  return j;
}

// ---------------------------------------------------------------------------
// Initial data
// ---------------------------------------------------------------------------

GridField make_initial(const GridSpec& grid, const InitialSpec& initial) {
  GridField f = grid.build();
  const double M = initial.osc;

  if (initial.kind == "sin-mode") {
    for (int i = 0; i < f.nodes[0]; ++i)
      for (int j = 0; j < f.nodes[1]; ++j) {
        const double x0 = f.coord(0, i);
        if (f.boundary == BoundaryMode::periodic) {
          double phase = initial.mode[0] * x0 * (2.0 * std::numbers::pi / f.extent[0]);
          if (f.dim == 2)
            phase += initial.mode[1] * f.coord(1, j) * (2.0 * std::numbers::pi / f.extent[1]);
          f.at(i, j) = initial.amplitude * std::sin(phase);
        } else {
          // Neumann-compatible cosine modes.
          double v = initial.amplitude *
                     std::cos(initial.mode[0] * std::numbers::pi * x0 / f.extent[0]);
          if (f.dim == 2)
            v *= std::cos(initial.mode[1] * std::numbers::pi * f.coord(1, j) / f.extent[1]);
          f.at(i, j) = v;
        }
      }
    return f;
  }

  if (initial.kind == "square-wave") {
    const int axis = initial.axis;
    if (axis < 0 || axis >= f.dim) fail(errc::config, "square-wave: axis out of range");
    for (int i = 0; i < f.nodes[0]; ++i)
      for (int j = 0; j < f.nodes[1]; ++j) {
        const double x = f.coord(axis, axis == 0 ? i : j);
        f.at(i, j) = x < 0.5 * f.extent[axis] ? 0.5 * M : -0.5 * M;
      }
    return f;
  }

  if (initial.kind == "random-bounded") {
    Rng rng(Rng::child_seed(initial.seed, 0xda7a));
    for (auto& v : f.values) v = rng.uniform(-0.5 * M, 0.5 * M);
    // Plant the extremes so the declared oscillation is exact.
    f.at(0, 0) = 0.5 * M;
    f.at(f.nodes[0] / 2, f.dim == 2 ? f.nodes[1] / 2 : 0) = -0.5 * M;
    return f;
  }

  if (initial.kind == "custom-csv") {
    std::ifstream in(initial.path);
    if (!in) fail(errc::io, "custom-csv: cannot open " + initial.path);
    std::string line;
    std::getline(in, line);  // header
    long idx = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto pos = line.find_last_of(',');
      if (pos == std::string::npos || idx >= f.node_count())
        fail(errc::io, "custom-csv: malformed row or too many rows");
      f.values[idx++] = std::stod(line.substr(pos + 1));
    }
    if (idx != f.node_count()) fail(errc::io, "custom-csv: row count does not match the grid");
    return f;
  }

  fail(errc::config, "unknown initial-data kind '" + initial.kind + "'");
}

// ---------------------------------------------------------------------------
// Targets
// ---------------------------------------------------------------------------

namespace {

struct Target {
  std::function<double(double, double)> value;  // (s, t); t = 0 is the initial profile
  std::string desc;
};

Target make_target(const TargetSpec& spec, const ModulusCurve& curve0,
                   const std::vector<double>& snapshot_times) {
  if (spec.kind == "erf") {
    const double M = spec.M, lam = spec.lambda;
    return {[M, lam](double s, double t) {
              return t > 0.0 ? 0.5 * M * erf_value(s / (2.0 * std::sqrt(lam * t))) : 0.5 * M;
            },
            "erf"};
  }
  if (spec.kind == "plaplace") {
    const PlaplaceProfile prof = make_plaplace(spec.p, spec.M);
    const double M = spec.M;
    return {[prof, M](double s, double t) { return t > 0.0 ? prof.value(s, t) : 0.5 * M; },
            "plaplace"};
  }
  if (spec.kind == "solve1d") {
    if (spec.f.is_null()) fail(errc::config, "solve1d target: 'f' descriptor required");
    const OneDimOp f = onedim_from_json(spec.f);
    const double M = spec.M;
    std::function<double(double)> phi0;
    if (spec.phi0 == "const")
      phi0 = [M](double) { return 0.5 * M; };
    else if (spec.phi0 == "sin-bump") {
      const double S = spec.S;
      phi0 = [M, S](double s) { return 0.5 * M * std::sin(std::numbers::pi * s / S); };
    } else {
      fail(errc::config, "solve1d target: unknown phi0 '" + spec.phi0 + "'");
    }
    double t_max = 0.0;
    for (double t : snapshot_times) t_max = std::max(t_max, t);
    auto profiles = std::make_shared<std::map<double, Profile1D>>();
    if (t_max > 0.0) {
      auto runs = solve_1d(f, phi0, spec.S, LeftBc::odd_reflection, RightBc::neumann_zero, t_max,
                           spec.nodes, snapshot_times);
      for (auto& p : runs) (*profiles)[p.t] = std::move(p);
    }
    return {[profiles, phi0](double s, double t) {
              if (t <= 0.0) return phi0(s);
              auto it = profiles->lower_bound(t - 1e-12);
              if (it == profiles->end() || std::abs(it->first - t) > 1e-9)
                fail(errc::invalid_argument, "solve1d target: no profile at t = " + std::to_string(t));
              return it->second.interp(s);
            },
            "solve1d"};
  }
  if (spec.kind == "initial") {
    // Constant-in-time target: the nondecreasing envelope of omega(., 0).
    auto env = std::make_shared<std::vector<double>>(curve0.bins, 0.0);
    double running = 0.0;
    for (int k = 0; k < curve0.bins; ++k) {
      if (curve0.occupancy[k] > 0) running = std::max(running, curve0.omega[k]);
      (*env)[k] = running;
    }
    const double ds = curve0.s_max / curve0.bins;
    const int bins = curve0.bins;
    return {[env, ds, bins](double s, double) {
              if (s <= 0.0) return 0.0;
              const int k = std::min(bins - 1, static_cast<int>(s / ds));
              return (*env)[k];
            },
            "initial-envelope"};
  }
  fail(errc::config, "unknown target kind '" + spec.kind + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

OperatorSpec resolve_operator(const ExperimentConfig& cfg) {
  if (!cfg.op_override.is_null()) return operator_from_json(cfg.op_override);
  return builtin_pair(cfg.pair).F;
}

VerifyReport run_comparison(const ExperimentConfig& cfg) {
  const OperatorSpec op = resolve_operator(cfg);
  const GridField u0 = make_initial(cfg.grid, cfg.initial);
  const double M = cfg.initial.osc;

  const ModulusCurve curve0 = compute_moc(u0, cfg.bins);
  const Target target = make_target(cfg.target, curve0, cfg.snapshots);

  // Hypothesis: the target's initial profile is a modulus of continuity for
  // the initial data (checked conservatively on every occupied bin).
  const auto hyp = is_bounded_by(
      curve0, [&](double s) { return target.value(s, 0.0); }, 1e-9 * (1.0 + M), /*min_pairs=*/1);
  if (!hyp.ok) {
    std::ostringstream os;
    os << "run_comparison: target initial profile does not dominate omega(., 0) "
       << "(excess " << hyp.worst_excess << " at s = " << hyp.worst_s << ")";
    fail(errc::hypothesis_failed, os.str());
  }

  double t_max = 0.0;
  for (double t : cfg.snapshots) {
    if (!(t > 0.0)) fail(errc::config, "run_comparison: snapshot times must be positive");
    t_max = std::max(t_max, t);
  }
  if (!(t_max > 0.0)) fail(errc::config, "run_comparison: snapshots must contain a positive time");
  const Trajectory traj = solve(u0, op, t_max, cfg.snapshots);

  VerifyReport rep;
  const double abs_tol = cfg.tol.abs_floor(M);
  int stride = curve0.stride;
  for (const auto& snap : traj.snapshots) {
    const ModulusCurve curve = compute_moc(snap, cfg.bins);
    stride = curve.stride;
    const double t = snap.time;
    const auto check = is_bounded_by(
        curve, [&](double s) { return (1.0 + cfg.tol.rel) * target.value(s, t); }, abs_tol);
    rep.comparisons.push_back(
        {t, check.ok, check.worst_excess, check.worst_s, check.bins_checked, check.bins_skipped_thin});
  }

  for (const auto& bound : cfg.bounds) {
    const double param = bound.kind == "p-gradient" ? bound.p : bound.lambda;
    const VerifyReport sub = check_gradient_bounds(traj, bound.kind, M, param, cfg.tol.rel);
    rep.gradients.insert(rep.gradients.end(), sub.gradients.begin(), sub.gradients.end());
  }

  rep.pass = true;
  for (const auto& c : rep.comparisons) rep.pass = rep.pass && c.pass;
  for (const auto& g : rep.gradients) rep.pass = rep.pass && g.pass;
  rep.meta = {{"config", cfg.to_json()},
              {"operator", op.descriptor},
              {"target", target.desc},
              {"abs_tol", abs_tol},
              {"moc_stride", stride},
              {"hypothesis_worst_excess", hyp.worst_excess}};
  return rep;
}

VerifyReport check_gradient_bounds(const Trajectory& traj, const std::string& kind, double M,
                                   double param, double tol) {
  VerifyReport rep;
  rep.pass = true;
  for (const auto& snap : traj.snapshots) {
    if (!(snap.time > 0.0)) continue;
    const double t = snap.time;
    const double g = gradient_sup(snap);
    double measured, bound;
    if (kind == "erf-gradient") {
      const double lam = param > 0.0 ? param : 1.0;
      measured = g;
      bound = M / (2.0 * std::sqrt(std::numbers::pi * lam * t));
    } else if (kind == "p-gradient") {
      measured = g;
      bound = make_plaplace(param, M).gradient_bound(t);
    } else if (kind == "mcf-exp") {
      measured = 1.0 + g * g;
      bound = std::exp(2.0 * M * M / t);
    } else {
      fail(errc::config, "unknown gradient-bound kind '" + kind + "'");
    }
    const double ratio = measured / bound;
    const bool pass = ratio <= 1.0 + tol;
    rep.gradients.push_back({t, kind, measured, bound, ratio, pass});
    rep.pass = rep.pass && pass;
  }
  return rep;
}

SharpnessReport run_sharpness(const ExperimentConfig& cfg) {
  if (cfg.initial.kind != "square-wave")
    fail(errc::config, "run_sharpness: square-wave initial data required");
  const OperatorSpec op = resolve_operator(cfg);
  const GridField u0 = make_initial(cfg.grid, cfg.initial);
  const double M = cfg.initial.osc;

  const ModulusCurve curve0 = compute_moc(u0, cfg.bins);
  const Target target = make_target(cfg.target, curve0, cfg.snapshots);

  double t_max = 0.0;
  for (double t : cfg.snapshots) t_max = std::max(t_max, t);
  const Trajectory traj = solve(u0, op, t_max, cfg.snapshots);

  SharpnessReport rep;
  const double floor = 0.05 * M;  // keep the ratio away from 0/0 near s = 0
  for (const auto& snap : traj.snapshots) {
    const ModulusCurve curve = compute_moc(snap, cfg.bins);
    double sup_t = 0.0;
    for (int k = 0; k < curve.bins; ++k) {
      if (curve.occupancy[k] < 8) continue;
      const double phi = target.value(curve.s_values[k], snap.time);
      if (phi < floor) continue;
      sup_t = std::max(sup_t, curve.omega[k] / phi);
    }
    rep.per_snapshot.emplace_back(snap.time, sup_t);
    rep.sup_ratio = std::max(rep.sup_ratio, sup_t);
  }
  rep.meta = {{"config", cfg.to_json()}, {"target", target.desc}, {"ratio_floor", floor}};
  return rep;
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

json VerifyReport::to_json() const {
  json comps = json::array();
  for (const auto& c : comparisons)
    comps.push_back({{"t", c.t},
                     {"pass", c.pass},
                     {"worst_excess", c.worst_excess},
                     {"worst_s", c.worst_s},
                     {"bins_checked", c.bins_checked},
                     {"thin_bins", c.thin_bins}});
  json grads = json::array();
  for (const auto& g : gradients)
    grads.push_back({{"t", g.t},
                     {"kind", g.kind},
                     {"measured", g.measured},
                     {"bound", g.bound},
                     {"ratio", g.ratio},
                     {"pass", g.pass}});
  return {{"comparisons", comps}, {"gradients", grads}, {"pass", pass}, {"meta", meta}};
}

json SharpnessReport::to_json() const {
  json per = json::array();
  for (const auto& [t, ratio] : per_snapshot) per.push_back({{"t", t}, {"ratio", ratio}});
  return {{"sup_ratio", sup_ratio}, {"per_snapshot", per}, {"meta", meta}};
}

// ---------------------------------------------------------------------------
// File I/O
// ---------------------------------------------------------------------------

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string snapshot_filename(double t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "t_%.6f.csv", t);
  return buf;
}

}  // namespace

void write_trajectory(const std::string& dir, const Trajectory& traj) {
  fs::create_directories(dir);
  write_json_file(dir + "/run.json", traj.metadata);
  for (const auto& snap : traj.snapshots) {
    std::ofstream out(dir + "/" + snapshot_filename(snap.time));
    if (!out) fail(errc::io, "cannot write snapshot CSV in " + dir);
    out << (snap.dim == 2 ? "x1,x2,u\n" : "x1,u\n");
    for (int i = 0; i < snap.nodes[0]; ++i)
      for (int j = 0; j < snap.nodes[1]; ++j) {
        out << format_double(snap.coord(0, i));
        if (snap.dim == 2) out << ',' << format_double(snap.coord(1, j));
        out << ',' << format_double(snap.at(i, j)) << '\n';
      }
  }
}

Trajectory read_trajectory(const std::string& dir) {
  const json meta = read_json_file(dir + "/run.json");
  const json grid = meta.at("grid");
  const int dim = grid.at("dim");
  std::array<double, 2> extent = parse_extent(grid.at("extent"));
  std::array<int, 2> nodes = parse_nodes(grid.at("nodes"));
  const BoundaryMode bc =
      grid.at("boundary") == "periodic" ? BoundaryMode::periodic : BoundaryMode::neumann;

  std::vector<std::pair<double, fs::path>> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("t_", 0) == 0 && name.size() > 6 && name.substr(name.size() - 4) == ".csv")
      files.emplace_back(std::stod(name.substr(2, name.size() - 6)), entry.path());
  }
  std::sort(files.begin(), files.end());

  Trajectory traj;
  traj.metadata = meta;
  for (const auto& [t, path] : files) {
    GridField f = make_grid(dim, extent, nodes, bc);
    f.time = t;
    std::ifstream in(path);
    if (!in) fail(errc::io, "cannot read " + path.string());
    std::string line;
    std::getline(in, line);  // header
    long idx = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto pos = line.find_last_of(',');
      if (pos == std::string::npos || idx >= f.node_count())
        fail(errc::io, "malformed trajectory CSV " + path.string());
      f.values[idx++] = std::stod(line.substr(pos + 1));
    }
    if (idx != f.node_count()) fail(errc::io, "trajectory CSV row count mismatch in " + path.string());
    traj.snapshots.push_back(std::move(f));
  }
  return traj;
}

void write_curve_csv(const std::string& path, const ModulusCurve& curve) {
  std::ofstream out(path);
  if (!out) fail(errc::io, "cannot write " + path);
  out << "s,omega\n";
  for (int k = 0; k < curve.bins; ++k) {
    if (curve.occupancy[k] == 0) continue;
    out << format_double(curve.s_values[k]) << ',' << format_double(curve.omega[k]) << '\n';
  }
}

void write_profile_csv(const std::string& path, const Profile1D& profile) {
  std::ofstream out(path);
  if (!out) fail(errc::io, "cannot write " + path);
  out << "s,phi\n";
  for (std::size_t i = 0; i < profile.s.size(); ++i)
    out << format_double(profile.s[i]) << ',' << format_double(profile.phi[i]) << '\n';
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(errc::io, "cannot write " + path);
  out << j.dump(2) << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot read " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace mocpde
