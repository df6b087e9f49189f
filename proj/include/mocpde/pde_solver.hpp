// Monotone explicit finite-difference evolution of
//   u_t + F(t, x, u, Du, D^2 u) = 0
// on 1D/2D periodic tori and on intervals/rectangles with homogeneous
// Neumann boundary (ghost-node reflection u_{-1} = u_1).
#pragma once

#include <array>
#include <vector>

#include <json.hpp>

#include "mocpde/operator_catalog.hpp"

namespace mocpde {

enum class BoundaryMode { periodic, neumann };

struct GridField {
  int dim = 1;
  std::array<double, 2> extent{0.0, 0.0};
  std::array<int, 2> nodes{0, 1};  // nodes[1] = 1 for 1D
  BoundaryMode boundary = BoundaryMode::periodic;
  double time = 0.0;
  std::vector<double> values;  // row-major: index = i0 * nodes[1] + i1

  // Periodic: h * nodes = extent; Neumann: h * (nodes - 1) = extent.
  double spacing(int axis) const;
  long node_count() const { return static_cast<long>(nodes[0]) * nodes[1]; }
  double& at(int i, int j = 0) { return values[static_cast<long>(i) * nodes[1] + j]; }
  double at(int i, int j = 0) const { return values[static_cast<long>(i) * nodes[1] + j]; }
  double coord(int axis, int index) const { return index * spacing(axis); }

  void validate() const;
  json geometry_json() const;
};

GridField make_grid(int dim, std::array<double, 2> extent, std::array<int, 2> nodes,
                    BoundaryMode boundary);

struct Trajectory {
  std::vector<GridField> snapshots;  // strictly increasing times
  json metadata;
};

// Largest stable explicit step: h^2 / (2 dim Lambda_max sigma) with safety
// sigma = 1.1. For gradient-dependent diffusivities Lambda_max is the sup of
// the (capped) diffusivity over the field's current discrete gradient range,
// so callers re-query every step. Throws errc::config for operators without
// a declared upper ellipticity bound.
double cfl_limit(const GridField& field, const OperatorSpec& op);

// One explicit Euler step: u <- u - dt F(t, x, u, D_h u, D^2_h u).
// Gradients are central differences; Hessians use 3-point axis differences
// plus, in 2D, the two diagonal second differences. Pucci-type operators are
// assembled from the rotated stencil (best orthogonal pair of axis/diagonal
// frames); other kinds evaluate their formula on the assembled Hessian.
// Requires dt <= cfl_limit; rejects non-finite results with node location.
GridField step(const GridField& field, const OperatorSpec& op, double dt);

// Repeated steps with dt = min(cfl_limit, distance to the next output time);
// snapshots land exactly on the requested times and the final time is always
// included. dt_user > 0 overrides the automatic step (still CFL-checked).
Trajectory solve(const GridField& field0, const OperatorSpec& op, double t_end,
                 std::vector<double> output_times = {}, double dt_user = 0.0);

// Max over nodes of the central-difference gradient norm.
double gradient_sup(const GridField& field);

// Discrete mean: plain average on the torus, trapezoidal weights on Neumann
// domains (the weighting the reflection stencil conserves exactly).
double field_mean(const GridField& field);

double field_osc(const GridField& field);  // max u - min u

}  // namespace mocpde
