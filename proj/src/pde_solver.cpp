#include "mocpde/pde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

namespace mocpde {

// ---------------------------------------------------------------------------
// GridField
// ---------------------------------------------------------------------------

double GridField::spacing(int axis) const {
  return boundary == BoundaryMode::periodic ? extent[axis] / nodes[axis]
                                            : extent[axis] / (nodes[axis] - 1);
}

void GridField::validate() const {
  if (dim != 1 && dim != 2) fail(errc::invalid_argument, "GridField: dim must be 1 or 2");
  for (int a = 0; a < dim; ++a) {
    if (nodes[a] < 3) fail(errc::invalid_argument, "GridField: need at least 3 nodes per axis");
    if (!(extent[a] > 0.0)) fail(errc::invalid_argument, "GridField: extent must be positive");
  }
  if (dim == 1 && nodes[1] != 1) fail(errc::invalid_argument, "GridField: 1D grid needs nodes[1] = 1");
  if (static_cast<long>(values.size()) != node_count())
    fail(errc::invalid_argument, "GridField: value array size mismatch");
  for (double v : values)
    if (!std::isfinite(v)) fail(errc::invalid_argument, "GridField: non-finite value");
}

json GridField::geometry_json() const {
  return {
      {"dim", dim},
      {"extent", dim == 2 ? json{extent[0], extent[1]} : json{extent[0]}},
      {"nodes", dim == 2 ? json{nodes[0], nodes[1]} : json{nodes[0]}},
      {"boundary", boundary == BoundaryMode::periodic ? "periodic" : "neumann"},
      {"time", time},
  };
}

GridField make_grid(int dim, std::array<double, 2> extent, std::array<int, 2> nodes,
                    BoundaryMode boundary) {
  GridField f;
  f.dim = dim;
  f.extent = extent;
  f.nodes = dim == 1 ? std::array<int, 2>{nodes[0], 1} : nodes;
  f.boundary = boundary;
  f.values.assign(f.node_count(), 0.0);
  f.validate();
  return f;
}

// ---------------------------------------------------------------------------
// Stencils
// ---------------------------------------------------------------------------

namespace {

// Periodic wraparound or Neumann reflection (ghost u_{-1} = u_1).
inline int shifted_index(int i, int n, BoundaryMode bc) {
  if (bc == BoundaryMode::periodic) {
    if (i < 0) return i + n;
    if (i >= n) return i - n;
    return i;
  }
  if (i < 0) return -i;
  if (i >= n) return 2 * n - 2 - i;
  return i;
}

struct NodeDerivatives {
  double u = 0.0;
  double p[2] = {0.0, 0.0};      // central-difference gradient
  double d2[2] = {0.0, 0.0};     // axis second differences
  double cross = 0.0;            // mixed derivative (2D)
  double ddiag[2] = {0.0, 0.0};  // diagonal second differences (2D)
};

NodeDerivatives node_derivatives(const GridField& f, int i, int j) {
  NodeDerivatives d;
  const int n0 = f.nodes[0], n1 = f.nodes[1];
  const double h0 = f.spacing(0);
  const auto bc = f.boundary;
  d.u = f.at(i, j);

  const int ip = shifted_index(i + 1, n0, bc), im = shifted_index(i - 1, n0, bc);
  d.p[0] = (f.at(ip, j) - f.at(im, j)) / (2.0 * h0);
  d.d2[0] = (f.at(ip, j) - 2.0 * d.u + f.at(im, j)) / (h0 * h0);

  if (f.dim == 2) {
    const double h1 = f.spacing(1);
    const int jp = shifted_index(j + 1, n1, bc), jm = shifted_index(j - 1, n1, bc);
    d.p[1] = (f.at(i, jp) - f.at(i, jm)) / (2.0 * h1);
    d.d2[1] = (f.at(i, jp) - 2.0 * d.u + f.at(i, jm)) / (h1 * h1);

    const double upp = f.at(ip, jp), umm = f.at(im, jm), upm = f.at(ip, jm), ump = f.at(im, jp);
    d.cross = (upp + umm - upm - ump) / (4.0 * h0 * h1);
    const double diag2 = h0 * h0 + h1 * h1;
    d.ddiag[0] = (upp - 2.0 * d.u + umm) / diag2;
    d.ddiag[1] = (upm - 2.0 * d.u + ump) / diag2;
  }
  return d;
}

// Rotated-stencil Pucci values: the extremum over the axis frame and, in 2D,
// the diagonal frame, of the per-direction eigenvalue sums.
double pucci_plus_stencil(const NodeDerivatives& d, int dim, double lam, double Lam) {
  auto frame = [&](double a, double b) {
    auto one = [&](double v) { return v > 0 ? Lam * v : lam * v; };
    return one(a) + (dim == 2 ? one(b) : 0.0);
  };
  double v = frame(d.d2[0], d.d2[1]);
  if (dim == 2) v = std::max(v, frame(d.ddiag[0], d.ddiag[1]));
  return v;
}

double pucci_minus_stencil(const NodeDerivatives& d, int dim, double lam, double Lam) {
  auto frame = [&](double a, double b) {
    auto one = [&](double v) { return v > 0 ? lam * v : Lam * v; };
    return one(a) + (dim == 2 ? one(b) : 0.0);
  };
  double v = frame(d.d2[0], d.d2[1]);
  if (dim == 2) v = std::min(v, frame(d.ddiag[0], d.ddiag[1]));
  return v;
}

bool needs_square_cells(OperatorKind k) {
  return k == OperatorKind::PucciMinus || k == OperatorKind::PucciPlus ||
         k == OperatorKind::GradientScaledPucci || k == OperatorKind::ProperXIndependent;
}

// Nodal evaluation of F from the stencil values. Mirrors eval_F; the unit
// tests cross-check the two on smooth fields.
double nodal_F(const OperatorSpec& op, double t, const Eigen::VectorXd& x,
               const NodeDerivatives& d, int dim) {
  switch (op.kind) {
    case OperatorKind::LinearElliptic: {
      const auto& pr = std::get<LinearEllipticParams>(op.params);
      double v = -(d.d2[0] + (dim == 2 ? d.d2[1] : 0.0)) - pr.V * d.u;
      if (pr.h) v -= pr.h(x);
      if (pr.W) {
        const Eigen::VectorXd w = pr.W(x);
        v -= w[0] * d.p[0] + (dim == 2 ? w[1] * d.p[1] : 0.0);
      }
      return v;
    }
    case OperatorKind::QuasilinearIsotropic: {
      const auto& pr = std::get<QuasilinearIsotropicParams>(op.params);
      const double q = dim == 2 ? std::hypot(d.p[0], d.p[1]) : std::abs(d.p[0]);
      const double alpha = std::min(pr.alpha(q), pr.diffusivity_cap);
      const double beta = std::min(pr.beta(q), pr.diffusivity_cap);
      const double trace = d.d2[0] + (dim == 2 ? d.d2[1] : 0.0);
      double radial;
      if (q < 1e-8) {
        radial = d.d2[0];  // p = 0 continuation, radial direction e1
      } else if (dim == 2) {
        radial = (d.p[0] * d.p[0] * d.d2[0] + 2.0 * d.p[0] * d.p[1] * d.cross +
                  d.p[1] * d.p[1] * d.d2[1]) /
                 (q * q);
      } else {
        radial = d.d2[0];
      }
      return -(beta * trace + (alpha - beta) * radial);
    }
    case OperatorKind::PucciMinus: {
      const auto& pr = std::get<PucciParams>(op.params);
      return -pucci_minus_stencil(d, dim, pr.lambda, pr.Lambda);
    }
    case OperatorKind::PucciPlus: {
      const auto& pr = std::get<PucciParams>(op.params);
      return -pucci_plus_stencil(d, dim, pr.lambda, pr.Lambda);
    }
    case OperatorKind::GradientScaledPucci: {
      const auto& pr = std::get<GradientScaledPucciParams>(op.params);
      const double q = dim == 2 ? std::hypot(d.p[0], d.p[1]) : std::abs(d.p[0]);
      const double scale = pr.gamma == 0.0 ? 1.0 : std::pow(q, pr.gamma);
      const double core = pr.plus ? pucci_plus_stencil(d, dim, pr.lambda, pr.Lambda)
                                  : pucci_minus_stencil(d, dim, pr.lambda, pr.Lambda);
      double v = -scale * core - pr.K * d.u;
      if (pr.x_term) v += pr.x_term(x);
      return v;
    }
    case OperatorKind::ProperXIndependent: {
      const auto& pr = std::get<ProperParams>(op.params);
      return -pucci_minus_stencil(d, dim, pr.pucci.lambda, pr.pucci.Lambda) + pr.r_coeff * d.u;
    }
    case OperatorKind::GradientDiffusionMatrix: {
      const auto& pr = std::get<GradientDiffusionParams>(op.params);
      Eigen::VectorXd p(dim);
      p[0] = d.p[0];
      if (dim == 2) p[1] = d.p[1];
      const Eigen::MatrixXd A = pr.A(p, t);
      double v = A(0, 0) * d.d2[0];
      if (dim == 2) v += A(1, 1) * d.d2[1] + (A(0, 1) + A(1, 0)) * d.cross;
      return -v;
    }
  }
  fail(errc::invalid_argument, "nodal_F: unknown operator kind");
}

}  // namespace

// ---------------------------------------------------------------------------
// CFL
// ---------------------------------------------------------------------------

double cfl_limit(const GridField& field, const OperatorSpec& op) {
  field.validate();
  const double qmax = gradient_sup(field);

  double lam_max = 0.0;
  switch (op.kind) {
    case OperatorKind::LinearElliptic:
      lam_max = 1.0;
      break;
    case OperatorKind::QuasilinearIsotropic: {
      const auto& pr = std::get<QuasilinearIsotropicParams>(op.params);
      for (int i = 0; i <= 32; ++i) {
        const double q = qmax * i / 32.0;
        lam_max = std::max(lam_max, std::min(std::max(pr.alpha(q), pr.beta(q)), pr.diffusivity_cap));
      }
      break;
    }
    case OperatorKind::PucciMinus:
    case OperatorKind::PucciPlus:
      lam_max = std::get<PucciParams>(op.params).Lambda;
      break;
    case OperatorKind::GradientScaledPucci: {
      const auto& pr = std::get<GradientScaledPucciParams>(op.params);
      lam_max = pr.Lambda * (pr.gamma == 0.0 ? 1.0 : std::pow(qmax, pr.gamma));
      break;
    }
    case OperatorKind::ProperXIndependent:
      lam_max = std::get<ProperParams>(op.params).pucci.Lambda;
      break;
    case OperatorKind::GradientDiffusionMatrix: {
      const auto& pr = std::get<GradientDiffusionParams>(op.params);
      if (!pr.lambda_upper)
        fail(errc::config,
             "cfl_limit: operator has no declared upper ellipticity bound; pass an explicit dt");
      lam_max = pr.lambda_upper(qmax, field.time);
      break;
    }
  }
  lam_max = std::max(lam_max, 1e-6);  // fully degenerate fields: keep dt finite

  double h_min = field.spacing(0);
  if (field.dim == 2) h_min = std::min(h_min, field.spacing(1));
  return h_min * h_min / (2.0 * field.dim * lam_max * 1.1);
}

// ---------------------------------------------------------------------------
// step / solve
// ---------------------------------------------------------------------------

namespace {

// The Euler update without the CFL gate; step() and solve() both land here.
GridField advance(const GridField& field, const OperatorSpec& op, double dt) {
  if (field.dim == 2 && needs_square_cells(op.kind) &&
      std::abs(field.spacing(0) - field.spacing(1)) > 1e-12 * field.spacing(0))
    fail(errc::invalid_argument, "step: the rotated Pucci stencil requires square cells");

  GridField out = field;
  const double t = field.time;
  Eigen::VectorXd x(field.dim);
  for (int i = 0; i < field.nodes[0]; ++i) {
    x[0] = field.coord(0, i);
    for (int j = 0; j < field.nodes[1]; ++j) {
      if (field.dim == 2) x[1] = field.coord(1, j);
      const NodeDerivatives d = node_derivatives(field, i, j);
      out.at(i, j) = d.u - dt * nodal_F(op, t, x, d, field.dim);
    }
  }
  out.time = t + dt;

  for (int i = 0; i < out.nodes[0]; ++i)
    for (int j = 0; j < out.nodes[1]; ++j)
      if (!std::isfinite(out.at(i, j))) {
        std::ostringstream os;
        os << "step: non-finite value at node (" << i << ", " << j << "), t = " << out.time;
        fail(errc::numerics, os.str());
      }
  return out;
}

}  // namespace

GridField step(const GridField& field, const OperatorSpec& op, double dt) {
  field.validate();
  if (!(dt > 0.0)) fail(errc::invalid_argument, "step: dt must be > 0");
  const double limit = cfl_limit(field, op);
  if (dt > limit * (1.0 + 1e-9))
    fail(errc::cfl_violation,
         "step: dt " + std::to_string(dt) + " exceeds the CFL limit " + std::to_string(limit));
  return advance(field, op, dt);
}

Trajectory solve(const GridField& field0, const OperatorSpec& op, double t_end,
                 std::vector<double> output_times, double dt_user) {
  field0.validate();
  if (!(t_end > field0.time)) fail(errc::invalid_argument, "solve: t_end must exceed the initial time");

  std::vector<double> outs = std::move(output_times);
  outs.push_back(t_end);
  std::sort(outs.begin(), outs.end());
  outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
  std::erase_if(outs, [&](double v) { return v <= field0.time || v > t_end; });

  Trajectory traj;
  json dt_history = json::array();
  double last_dt = -1.0;
  long steps = 0;

  GridField current = field0;
  std::size_t out_idx = 0;
  while (out_idx < outs.size()) {
    double dt;
    if (dt_user > 0.0) {
      // Explicit user step; the automatic limit still applies when available.
      dt = dt_user;
      try {
        dt = std::min(dt, cfl_limit(current, op));
      } catch (const error& e) {
        if (e.code() != errc::config) throw;
      }
    } else {
      dt = cfl_limit(current, op);
    }
    bool landed = false;
    if (current.time + dt >= outs[out_idx] - 1e-15) {
      dt = outs[out_idx] - current.time;
      landed = true;
    }
    current = advance(current, op, dt);
    if (landed) current.time = outs[out_idx];  // pin against rounding drift
    ++steps;
    if (last_dt < 0.0 || std::abs(dt - last_dt) > 1e-15 * std::max(dt, last_dt)) {
      dt_history.push_back({{"t", current.time}, {"dt", dt}});
      last_dt = dt;
    }
    if (landed) {
      traj.snapshots.push_back(current);
      ++out_idx;
    }
  }

  traj.metadata = {
      {"grid", field0.geometry_json()},
      {"operator", op.descriptor},
      {"t_end", t_end},
      {"steps", steps},
      {"dt_history", dt_history},
  };
  return traj;
}

// ---------------------------------------------------------------------------
// Field reductions
// ---------------------------------------------------------------------------

double gradient_sup(const GridField& field) {
  field.validate();
  const int n0 = field.nodes[0], n1 = field.nodes[1];
  const double h0 = field.spacing(0);
  const double h1 = field.dim == 2 ? field.spacing(1) : 1.0;
  const auto bc = field.boundary;

  double best = 0.0;
  for (int i = 0; i < n0; ++i) {
    const int ip = shifted_index(i + 1, n0, bc), im = shifted_index(i - 1, n0, bc);
    for (int j = 0; j < n1; ++j) {
      const double g0 = (field.at(ip, j) - field.at(im, j)) / (2.0 * h0);
      double norm2 = g0 * g0;
      if (field.dim == 2) {
        const int jp = shifted_index(j + 1, n1, bc), jm = shifted_index(j - 1, n1, bc);
        const double g1 = (field.at(i, jp) - field.at(i, jm)) / (2.0 * h1);
        norm2 += g1 * g1;
      }
      best = std::max(best, norm2);
    }
  }
  return std::sqrt(best);
}

double field_mean(const GridField& field) {
  field.validate();
  if (field.boundary == BoundaryMode::periodic) {
    double sum = 0.0;
    for (double v : field.values) sum += v;
    return sum / static_cast<double>(field.node_count());
  }
  auto axis_weight = [](int idx, int n) { return (idx == 0 || idx == n - 1) ? 0.5 : 1.0; };
  double sum = 0.0, wsum = 0.0;
  for (int i = 0; i < field.nodes[0]; ++i)
    for (int j = 0; j < field.nodes[1]; ++j) {
      const double w = axis_weight(i, field.nodes[0]) *
                       (field.dim == 2 ? axis_weight(j, field.nodes[1]) : 1.0);
      sum += w * field.at(i, j);
      wsum += w;
    }
  return sum / wsum;
}

double field_osc(const GridField& field) {
  const auto [mn, mx] = std::minmax_element(field.values.begin(), field.values.end());
  return *mx - *mn;
}

}  // namespace mocpde
