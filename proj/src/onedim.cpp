#include "mocpde/onedim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mocpde/quadrature.hpp"

namespace mocpde {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;
}  // namespace

// ---------------------------------------------------------------------------
// erf
// ---------------------------------------------------------------------------

double erf_value(double z) {
  if (std::isnan(z)) return z;
  const double a = std::abs(z);
  double v;
  if (a < 2.5) {
    // Alternating Taylor series: erf(z) = 2/sqrt(pi) sum (-1)^k z^{2k+1} / (k! (2k+1)).
    const double z2 = a * a;
    double coeff = a;  // z^{2k+1} / k!
    double sum = a;
    for (int k = 1; k < 80; ++k) {
      coeff *= -z2 / k;
      const double term = coeff / (2 * k + 1);
      sum += term;
      if (std::abs(term) < 1e-18) break;
    }
    v = 2.0 / kSqrtPi * sum;
  } else if (a < 6.5) {
    // Laplace continued fraction for erfc: erfc(z) = e^{-z^2}/sqrt(pi) *
    // 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))), evaluated backward.
    double d = a;
    for (int k = 60; k >= 1; --k) d = a + (0.5 * k) / d;
    v = 1.0 - std::exp(-a * a) / (kSqrtPi * d);
  } else {
    v = 1.0;  // erfc(6.5) < 3e-20, below the documented 1e-12 budget
  }
  return z < 0 ? -v : v;
}

double erf_profile(double M, double s, double t) {
  if (!(t > 0.0)) fail(errc::domain, "erf_profile: t must be > 0");
  return 0.5 * M * erf_value(s / (2.0 * std::sqrt(t)));
}

// ---------------------------------------------------------------------------
// F_p
// ---------------------------------------------------------------------------

namespace {

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(errc::invalid_argument, "F_p: need 1 < p < infinity");
}

bool is_p2(double p) { return std::abs(p - 2.0) < 1e-12; }

}  // namespace

double fp(double p, double z, double abs_tol) {
  check_p(p);
  if (z <= 0.0) return 0.0;
  if (is_p2(p)) {
    const double zc = std::min(z, 6.5);  // tail below 3e-20
    return adaptive_gk15([](double s) { return std::exp(-s * s); }, 0.0, zc, abs_tol).value;
  }
  if (p > 2.0) {
    // (1 - s^2)_+^{m}, m = 1/(p-2): substitute s = sin(theta), the integrand
    // becomes cos^{2m+1}(theta) which is smooth up to the endpoint.
    const double m = 1.0 / (p - 2.0);
    const double upper = std::asin(std::min(z, 1.0));
    return adaptive_gk15([m](double th) { return std::pow(std::cos(th), 2.0 * m + 1.0); }, 0.0,
                         upper, abs_tol)
        .value;
  }
  // 1 < p < 2: (1 + s^2)^{m} with m = 1/(p-2) < 0; substitute s = tan(theta):
  // integrand cos^{nu}(theta), nu = 2(p-1)/(2-p) > 0, smooth on [0, pi/2].
  const double nu = 2.0 * (p - 1.0) / (2.0 - p);
  const double upper = std::atan(z);
  return adaptive_gk15([nu](double th) { return std::pow(std::cos(th), nu); }, 0.0, upper, abs_tol)
      .value;
}

double fp_infinity(double p, double abs_tol) {
  check_p(p);
  if (is_p2(p)) return fp(2.0, 7.0, abs_tol);
  if (p > 2.0) return fp(p, 1.0, abs_tol);
  // Improper integral after the tangent substitution: upper limit pi/2. The
  // integrand cos^{nu} is continuous there (nu > 0), so convergence is
  // automatic; the quadrature error check below guards the claim.
  const double nu = 2.0 * (p - 1.0) / (2.0 - p);
  const auto res = adaptive_gk15([nu](double th) { return std::pow(std::cos(th), nu); }, 0.0,
                                 0.5 * kPi, abs_tol);
  if (!res.converged) fail(errc::numerics, "fp_infinity: tail quadrature did not converge");
  return res.value;
}

// ---------------------------------------------------------------------------
// p-Laplacian profile
// ---------------------------------------------------------------------------

PlaplaceProfile make_plaplace(double p, double M) {
  check_p(p);
  if (!(M > 0.0)) fail(errc::invalid_argument, "p-Laplacian profile: M must be > 0");
  PlaplaceProfile prof;
  prof.p = p;
  prof.M = M;
  prof.fp_inf = fp_infinity(p, 1e-12);
  prof.amplitude = 0.5 * M / prof.fp_inf;
  if (is_p2(p)) {
    prof.scale_c = 2.0;
    prof.rp_printed = 2.0;
  } else {
    const double ratio = 2.0 * p * (p - 1.0) / std::abs(p - 2.0);
    prof.scale_c = std::pow(ratio, 1.0 / p) * std::pow(prof.amplitude, (p - 2.0) / p);
    prof.rp_printed = std::pow(ratio, 1.0 / p) * std::pow(2.0 * prof.fp_inf, (2.0 - p) / p);
  }
  return prof;
}

double PlaplaceProfile::value(double s, double t) const {
  if (!(t > 0.0)) fail(errc::domain, "p-Laplacian profile: t must be > 0");
  if (s <= 0.0) return 0.0;
  const double xi = s / (scale_c * std::pow(t, 1.0 / p));
  return amplitude * fp(p, xi, 1e-12);
}

double PlaplaceProfile::gradient_bound(double t) const {
  if (!(t > 0.0)) fail(errc::domain, "p-Laplacian profile: t must be > 0");
  // phi'(0, t) = amplitude / (scale_c t^{1/p}); F_p'(0) = 1 in every branch.
  return amplitude / (scale_c * std::pow(t, 1.0 / p));
}

double plaplace_profile(double p, double M, double s, double t) {
  return make_plaplace(p, M).value(s, t);
}

double plaplace_residual(double p, double M, std::vector<std::pair<double, double>> st_points) {
  const PlaplaceProfile prof = make_plaplace(p, M);

  if (st_points.empty()) {
    // Similarity variable xi = s / (c t^{1/p}); stay away from phi' = 0 and,
    // for p > 2, away from the free boundary xi = 1.
    const double xi_hi = p > 2.0 ? 0.85 : 2.0;
    for (double t : {0.5, 1.0, 2.0}) {
      for (int i = 0; i < 12; ++i) {
        const double xi = 0.05 + (xi_hi - 0.05) * i / 11.0;
        const double s = xi * prof.scale_c * std::pow(t, 1.0 / p);
        st_points.emplace_back(s, t);
      }
    }
  }

  double max_res = 0.0, max_pt = 0.0;
  for (const auto& [s, t] : st_points) {
    const double feature = prof.scale_c * std::pow(t, 1.0 / p);
    const double ds = 2e-3 * feature;
    const double dt = 2e-3 * t;

    // Fourth-order central differences of the closed form.
    auto v = [&](double ss, double tt) { return prof.value(ss, tt); };
    const double phi_s =
        (-v(s + 2 * ds, t) + 8 * v(s + ds, t) - 8 * v(s - ds, t) + v(s - 2 * ds, t)) / (12 * ds);
    const double phi_ss = (-v(s + 2 * ds, t) + 16 * v(s + ds, t) - 30 * v(s, t) +
                           16 * v(s - ds, t) - v(s - 2 * ds, t)) /
                          (12 * ds * ds);
    const double phi_t =
        (-v(s, t + 2 * dt) + 8 * v(s, t + dt) - 8 * v(s, t - dt) + v(s, t - 2 * dt)) / (12 * dt);

    if (std::abs(phi_s) < 1e-3) continue;  // outside the oracle's validity window
    const double res = phi_t - (p - 1.0) * std::pow(std::abs(phi_s), p - 2.0) * phi_ss;
    max_res = std::max(max_res, std::abs(res));
    max_pt = std::max(max_pt, std::abs(phi_t));
  }
  if (max_pt == 0.0) fail(errc::invalid_argument, "plaplace_residual: empty or degenerate grid");
  return max_res / max_pt;
}

// ---------------------------------------------------------------------------
// T_kappa, divergence criterion, curvature operator
// ---------------------------------------------------------------------------

double t_kappa(double kappa, double t) {
  if (!(std::isfinite(kappa) && std::isfinite(t)))
    fail(errc::invalid_argument, "t_kappa: non-finite argument");
  if (kappa == 0.0) return 0.0;
  if (kappa > 0.0) {
    const double rk = std::sqrt(kappa);
    if (t >= 0.5 * kPi / rk)
      fail(errc::domain, "t_kappa: argument at or past the tangent pole pi/(2 sqrt(kappa))");
    return rk * std::tan(rk * t);
  }
  const double rk = std::sqrt(-kappa);
  return -rk * std::tanh(rk * t);
}

double b_integral(const ScalarFn& lambda, double a) {
  if (!lambda) fail(errc::invalid_argument, "b_integral: lambda required");
  if (!(a >= 0.0)) fail(errc::invalid_argument, "b_integral: a must be >= 0");
  auto integrand = [&lambda](double t) {
    const double l = lambda(t);
    if (l < -1e-12) fail(errc::invalid_argument, "b_integral: lambda sampled negative");
    return t * l;
  };
  return adaptive_gk15(integrand, 0.0, a, 1e-10).value;
}

DivergenceClass diverges_heuristic(const ScalarFn& lambda, double a_max) {
  if (!(a_max >= 4.0)) fail(errc::invalid_argument, "diverges_heuristic: a_max must be >= 4");
  std::vector<double> ladder{1.0};
  while (ladder.back() * 2.0 <= a_max) ladder.push_back(ladder.back() * 2.0);

  std::vector<double> increments;
  double total = b_integral(lambda, ladder[0]);
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    auto integrand = [&lambda](double t) {
      const double l = lambda(t);
      if (l < -1e-12) fail(errc::invalid_argument, "diverges_heuristic: lambda sampled negative");
      return t * l;
    };
    const double inc = adaptive_gk15(integrand, ladder[i - 1], ladder[i], 1e-10).value;
    increments.push_back(inc);
    total += inc;
  }
  if (increments.size() < 2) return DivergenceClass::inconclusive;

  if (increments.back() <= 1e-10 * (1.0 + total)) return DivergenceClass::bounded;

  const std::size_t look = std::min<std::size_t>(3, increments.size() - 1);
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  for (std::size_t i = increments.size() - look; i < increments.size(); ++i) {
    const double prev = increments[i - 1];
    if (prev <= 0.0) return DivergenceClass::inconclusive;
    const double ratio = increments[i] / prev;
    rmin = std::min(rmin, ratio);
    rmax = std::max(rmax, ratio);
  }
  if (rmin >= 0.9) return DivergenceClass::diverges;    // doublings keep adding
  if (rmax <= 0.6) return DivergenceClass::bounded;     // geometric decay
  return DivergenceClass::inconclusive;
}

OneDimOp curvature_f(ScalarFn alpha, ScalarFn beta, double kappa, int n) {
  return OneDimOp::curvature({std::move(alpha), std::move(beta), kappa, n},
                             {{"kind", "curvature-1d"}, {"kappa", kappa}, {"n", n}});
}

// ---------------------------------------------------------------------------
// 1D solver
// ---------------------------------------------------------------------------

double Profile1D::interp(double s_query) const {
  if (s.empty()) fail(errc::invalid_argument, "Profile1D::interp: empty profile");
  if (s_query <= s.front()) return phi.front();
  if (s_query >= s.back()) return phi.back();
  const auto it = std::upper_bound(s.begin(), s.end(), s_query);
  const std::size_t j = static_cast<std::size_t>(it - s.begin());
  const double w = (s_query - s[j - 1]) / (s[j] - s[j - 1]);
  return (1.0 - w) * phi[j - 1] + w * phi[j];
}

namespace {

// Upper diffusivity bound for the 1D CFL, sampled over [0, qmax].
double onedim_diffusivity_bound(const OneDimOp& f, double t, double qmax, double cap) {
  switch (f.kind) {
    case OneDimKind::Linear1D:
      return std::abs(std::get<Linear1DParams>(f.params).lambda0);
    case OneDimKind::Quasilinear1D: {
      const auto& pr = std::get<Quasilinear1DParams>(f.params);
      double best = 0.0;
      for (int i = 0; i <= 32; ++i) {
        const double q = qmax * i / 32.0;
        best = std::max(best, std::min(pr.lambda(q, t), std::min(cap, pr.diffusivity_cap)));
      }
      return best;
    }
    case OneDimKind::Zero:
      return 0.0;
    case OneDimKind::Curvature1D: {
      const auto& pr = std::get<Curvature1DParams>(f.params);
      double best = 0.0;
      for (int i = 0; i <= 32; ++i) best = std::max(best, std::min(pr.alpha(qmax * i / 32.0), cap));
      return best;
    }
  }
  return 0.0;
}

}  // namespace

std::vector<Profile1D> solve_1d(const OneDimOp& f, const std::function<double(double)>& phi0,
                                double S, LeftBc left_bc, RightBc right_bc, double t_end,
                                int nodes, const std::vector<double>& output_times,
                                const Solve1DOptions& options) {
  if (nodes < 16) fail(errc::invalid_argument, "solve_1d: need at least 16 nodes");
  if (!(S > 0.0)) fail(errc::invalid_argument, "solve_1d: S must be > 0");
  if (!(t_end >= 0.0)) fail(errc::invalid_argument, "solve_1d: t_end must be >= 0");
  if (!phi0) fail(errc::invalid_argument, "solve_1d: initial profile required");

  const double h = S / (nodes - 1);
  std::vector<double> s_grid(nodes), phi(nodes);
  for (int i = 0; i < nodes; ++i) {
    s_grid[i] = i * h;
    phi[i] = phi0(s_grid[i]);
  }
  if (left_bc == LeftBc::odd_reflection || left_bc == LeftBc::dirichlet_zero) phi[0] = 0.0;
  const double right_pin = std::isnan(options.right_value) ? phi[nodes - 1] : options.right_value;

  // Distinct requested times in (0, t_end], final time always present.
  std::vector<double> outs = output_times;
  outs.push_back(t_end);
  std::sort(outs.begin(), outs.end());
  outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
  std::erase_if(outs, [t_end](double v) { return v <= 0.0 || v > t_end; });

  std::vector<Profile1D> result;
  auto snapshot = [&](double t) {
    Profile1D p;
    p.s = s_grid;
    p.phi = phi;
    p.t = t;
    p.left_bc = left_bc;
    p.right_bc = right_bc;
    result.push_back(std::move(p));
  };
  if (outs.empty() || t_end == 0.0) {
    snapshot(0.0);
    return result;
  }

  std::vector<double> next(nodes);
  double t = 0.0;
  std::size_t out_idx = 0;
  const double cap = options.diffusivity_cap;

  while (out_idx < outs.size()) {
    // CFL from the current discrete gradient range.
    double qmax = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const double left = i == 0 ? (left_bc == LeftBc::odd_reflection ? -phi[1] : 0.0) : phi[i - 1];
      const double right = i == nodes - 1 ? (right_bc == RightBc::neumann_zero ? phi[nodes - 2] : phi[nodes - 1]) : phi[i + 1];
      qmax = std::max(qmax, std::abs(right - left) / (2.0 * h));
    }
    double dt;
    if (options.dt_user > 0.0) {
      dt = options.dt_user;
      const double lam_max = onedim_diffusivity_bound(f, t, qmax, cap);
      if (lam_max > 0.0 && dt > h * h / (2.0 * lam_max * 1.1) * (1.0 + 1e-9))
        fail(errc::cfl_violation, "solve_1d: user dt " + std::to_string(dt) +
                                      " exceeds the CFL limit " +
                                      std::to_string(h * h / (2.0 * lam_max * 1.1)));
    } else {
      const double lam_max = onedim_diffusivity_bound(f, t, qmax, cap);
      if (lam_max > 1e6)
        fail(errc::numerics,
             "solve_1d: diffusivity bound exceeds 1e6; set Solve1DOptions::diffusivity_cap");
      if (lam_max > 0.0)
        dt = h * h / (2.0 * 1.0 * lam_max * 1.1);
      else if (f.kind == OneDimKind::Zero)
        dt = outs[out_idx] - t;
      else
        dt = 0.25 * h;  // first-order terms only
    }
    bool landed = false;
    if (t + dt >= outs[out_idx] - 1e-15) {
      dt = outs[out_idx] - t;
      landed = true;
    }

    for (int i = 0; i < nodes; ++i) {
      if (left_bc == LeftBc::dirichlet_zero && i == 0) {
        next[i] = 0.0;
        continue;
      }
      if (right_bc == RightBc::dirichlet_value && i == nodes - 1) {
        next[i] = right_pin;
        continue;
      }
      const double u_left = i == 0 ? (left_bc == LeftBc::odd_reflection ? -phi[1] : phi[0]) : phi[i - 1];
      const double u_right = i == nodes - 1 ? phi[nodes - 2] : phi[i + 1];
      const double dphi = (u_right - u_left) / (2.0 * h);
      const double d2phi = (u_right - 2.0 * phi[i] + u_left) / (h * h);
      next[i] = phi[i] - dt * eval_f_raw(f, t, s_grid[i], phi[i], dphi, d2phi, cap);
    }
    phi.swap(next);
    t = landed ? outs[out_idx] : t + dt;
    for (double v : phi)
      if (!std::isfinite(v)) fail(errc::numerics, "solve_1d: non-finite value at t = " + std::to_string(t));
    if (landed) {
      snapshot(t);
      ++out_idx;
    }
  }
  return result;
}

}  // namespace mocpde
