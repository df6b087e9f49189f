// One-dimensional comparison equation: explicit solver for
// phi_t + f(t, s, phi, phi', phi'') = 0 on [0, S], closed-form profiles
// (error-function and p-Laplacian self-similar solutions), the curvature
// comparison function T_kappa, and the divergence integral B.
#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "mocpde/operator_catalog.hpp"

namespace mocpde {

// ---------------------------------------------------------------------------
// 1D profiles and solver
// ---------------------------------------------------------------------------

enum class LeftBc { odd_reflection, dirichlet_zero };
enum class RightBc { neumann_zero, dirichlet_value };

struct Profile1D {
  std::vector<double> s;    // nodes on [0, S]
  std::vector<double> phi;  // nodal values
  double t = 0.0;
  LeftBc left_bc = LeftBc::odd_reflection;
  RightBc right_bc = RightBc::neumann_zero;

  double interp(double s_query) const;  // linear interpolation, clamped ends
};

struct Solve1DOptions {
  double diffusivity_cap = 1e3;  // clamp for gradient-dependent diffusivities
  double dt_user = 0.0;          // 0 = automatic CFL step
  // Pin for RightBc::dirichlet_value; NaN means "hold the initial value".
  double right_value = std::numeric_limits<double>::quiet_NaN();
};

// Explicit Euler. Under odd_reflection the ghost value is -phi[1] and the
// s = 0 node starts at the odd-extension mean 0, so a jump datum
// phi0 = M/2 evolves as the odd square wave. Output profiles are produced
// exactly at the requested times (the final time is always included).
std::vector<Profile1D> solve_1d(const OneDimOp& f, const std::function<double(double)>& phi0,
                                double S, LeftBc left_bc, RightBc right_bc, double t_end,
                                int nodes, const std::vector<double>& output_times = {},
                                const Solve1DOptions& options = {});

// ---------------------------------------------------------------------------
// Error-function profile
// ---------------------------------------------------------------------------

// erf evaluated by an alternating Taylor series for |z| <= 2.5 and the
// Laplace continued fraction for erfc beyond; absolute error below 1e-13.
double erf_value(double z);

// (M/2) erf(s / (2 sqrt(t))); the 1D heat evolution of the half-oscillation
// square wave. Requires t > 0.
double erf_profile(double M, double s, double t);

// ---------------------------------------------------------------------------
// p-Laplacian self-similar profile
// ---------------------------------------------------------------------------

// F_p(z): integral of (1+s^2)^{1/(p-2)} (1 < p < 2), e^{-s^2} (p = 2), or
// (1-s^2)_+^{1/(p-2)} (p > 2) from 0 to z. Endpoint singularities and the
// improper upper limit are removed by trigonometric substitution before
// adaptive quadrature.
double fp(double p, double z, double abs_tol = 1e-10);
double fp_infinity(double p, double abs_tol = 1e-10);

// Closed-form similarity solution of phi_t = (p-1)|phi'|^{p-2} phi'' with
// initial datum M/2:
//   phi(s, t) = amplitude * F_p(s / (scale_c * t^{1/p})),
//   amplitude = M / (2 F_p(inf)),
//   scale_c   = (2p(p-1)/|p-2|)^{1/p} * amplitude^{(p-2)/p}   (p != 2),
//   scale_c   = 2                                              (p = 2).
// The constants are pinned by the residual oracle below; rp_printed stores
// the tabulated R_p normalization for cross-checks against the gradient
// bound M^{2/p} t^{-1/p} / (2 R_p F_p(inf)).
struct PlaplaceProfile {
  double p = 2.0;
  double M = 1.0;
  double fp_inf = 0.0;
  double amplitude = 0.0;
  double scale_c = 0.0;
  double rp_printed = 0.0;

  double value(double s, double t) const;           // requires t > 0
  double gradient_bound(double t) const;             // sup_s |phi'(s, t)|
};

PlaplaceProfile make_plaplace(double p, double M);
double plaplace_profile(double p, double M, double s, double t);

// Max of |phi_t - (p-1)|phi'|^{p-2} phi''| over the sample grid, normalized
// by max |phi_t|, with derivatives taken by fourth-order central differences
// of the closed form. Empty grid = default grid keeping |phi'| >= 1e-3 and,
// for p > 2, staying inside the support of the profile.
double plaplace_residual(double p, double M,
                         std::vector<std::pair<double, double>> st_points = {});

// ---------------------------------------------------------------------------
// Curvature comparison function and divergence criterion
// ---------------------------------------------------------------------------

// T_kappa(t) = sqrt(k) tan(sqrt(k) t) / 0 / -sqrt(-k) tanh(sqrt(-k) t).
// kappa > 0 requires t < pi / (2 sqrt(kappa)); at or past the pole a domain
// error is thrown.
double t_kappa(double kappa, double t);

// B(a) = integral of t lambda(t) from 0 to a. Throws on sampled negative
// lambda values.
double b_integral(const ScalarFn& lambda, double a);

enum class DivergenceClass { diverges, bounded, inconclusive };

// Evaluates B on the geometric ladder a = 1, 2, 4, ..., a_max and classifies
// by the tail behavior of the increments: non-decaying increments mean the
// integral diverges, geometrically decaying increments mean it stays bounded.
DivergenceClass diverges_heuristic(const ScalarFn& lambda, double a_max);

// The one-dimensional operator induced on a space with Ricci curvature
// bounded below by (n-1) kappa:
//   f = -alpha(phi') phi'' + (n-1) T_kappa(s) phi' beta(phi').
OneDimOp curvature_f(ScalarFn alpha, ScalarFn beta, double kappa, int n);

}  // namespace mocpde
