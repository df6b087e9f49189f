#include "mocpde/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mocpde/common.hpp"

namespace mocpde {

namespace {

// Kronrod-15 abscissae on [0,1] with Gauss-7 weights interleaved.
// Columns: node, Gauss weight (0 for Kronrod-only nodes), Kronrod weight.
constexpr double kNodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct Interval {
  double a, b;
  double value;
  double err;
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = b - mid;

  const double y0 = f(mid);
  double g7 = kNodes[0][1] * y0;
  double k15 = kNodes[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kNodes[i][0];
    const double yi = f(mid + dx) + f(mid - dx);
    g7 += kNodes[i][1] * yi;
    k15 += kNodes[i][2] * yi;
  }
  g7 *= half;
  k15 *= half;
  return {a, b, k15, std::abs(k15 - g7)};
}

}  // namespace

QuadResult adaptive_gk15(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, int max_intervals) {
  if (!(abs_tol > 0)) fail(errc::invalid_argument, "adaptive_gk15: tolerance must be positive");
  QuadResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }

  std::vector<Interval> intervals;
  intervals.reserve(64);
  intervals.push_back(gk15(f, a, b));
  double total_err = intervals[0].err;

  while (total_err > abs_tol) {
    if (static_cast<int>(intervals.size()) >= max_intervals) {
      fail(errc::numerics, "adaptive_gk15: interval budget exhausted (error estimate " +
                               std::to_string(total_err) + ")");
    }
    auto worst = std::max_element(
        intervals.begin(), intervals.end(),
        [](const Interval& u, const Interval& v) { return u.err < v.err; });
    const Interval old = *worst;
    const double mid = 0.5 * (old.a + old.b);
    const Interval left = gk15(f, old.a, mid);
    const Interval right = gk15(f, mid, old.b);
    total_err += left.err + right.err - old.err;
    *worst = left;
    intervals.push_back(right);
  }

  double total = 0.0;
  for (const auto& iv : intervals) total += iv.value;
  res.value = total;
  res.error_estimate = total_err;
  res.intervals = static_cast<int>(intervals.size());
  res.converged = true;
  return res;
}

}  // namespace mocpde
