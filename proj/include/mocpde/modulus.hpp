// Modulus of continuity omega(s, t) of a grid field by brute-force pairwise
// supremum, binned by half-distance s.
#pragma once

#include <functional>
#include <vector>

#include "mocpde/pde_solver.hpp"

namespace mocpde {

enum class MocMetric { torus, euclidean };

struct ModulusCurve {
  std::vector<double> s_values;   // per-bin max observed pair half-distance
  std::vector<double> omega;      // per-bin sup of |u(x) - u(y)| / 2
  std::vector<long> occupancy;    // pair count per bin; 0 marks an empty bin
  double t = 0.0;
  MocMetric metric = MocMetric::torus;
  int bins = 0;
  double s_max = 0.0;  // half the domain diameter in the metric
  int stride = 1;      // node subsampling stride (documented in reports)
};

// Enumerates node pairs (O(N^2)); distances use the per-axis minimal image on
// the torus and straight-line distance on Neumann domains. Pairs land in bin
// floor(d / (2 s_max / bins)). 2D grids above 96 nodes per axis are
// subsampled by the smallest stride bringing them back under; the stride is
// recorded on the curve.
ModulusCurve compute_moc(const GridField& field, int bins);

struct BoundReport {
  bool ok = false;
  int worst_bin = -1;
  double worst_excess = -std::numeric_limits<double>::infinity();
  double worst_s = 0.0;
  long bins_checked = 0;
  long bins_skipped_thin = 0;
};

// Checks omega[k] <= profile(s_k) + tol on occupied bins, with the profile
// evaluated at the bin's maximal observed pair distance. Bins holding fewer
// than min_pairs pairs are reported but not asserted (thin bins near the
// domain diameter carry too few pairs to be meaningful).
BoundReport is_bounded_by(const ModulusCurve& curve, const std::function<double(double)>& profile,
                          double tol, long min_pairs = 8);

}  // namespace mocpde
