// Adaptive Gauss-Kronrod (G7, K15) quadrature with interval bisection.
#pragma once

#include <functional>

namespace mocpde {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
  bool converged = false;
};

// Integrates f over [a, b] to the requested absolute tolerance by bisecting
// the interval with the largest local error estimate. Throws errc::numerics
// if the budget of subintervals is exhausted before convergence.
QuadResult adaptive_gk15(const std::function<double(double)>& f, double a, double b,
                         double abs_tol = 1e-10, int max_intervals = 4000);

}  // namespace mocpde
