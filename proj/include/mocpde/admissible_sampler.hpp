// Block Hessian of 2 phi(|x-y|/2, t) and sampling of tuples
// (x, y, v, r, X, Y) satisfying the matrix constraint
// diag(X, -Y) <= D^2_{x,y} (2 phi(|x-y|/2, t)).
#pragma once

#include <cstdint>

#include <Eigen/Core>
#include <json.hpp>

#include "mocpde/common.hpp"
#include "mocpde/operator_catalog.hpp"

namespace mocpde {

struct BlockHessian {
  int n = 0;
  Eigen::MatrixXd P;  // n x n: (phi''/2) e e' + (phi'/(2s)) (I - e e')
  Eigen::MatrixXd M;  // 2n x 2n: [[P, -P], [-P, P]]
};

// Requires |e| = 1 within 1e-12 and jet.s > 0. M annihilates vectors of the
// form (xi, xi) by construction.
BlockHessian block_hessian(const Jet1D& jet, const Eigen::VectorXd& e);

struct AdmissibleTuple {
  Eigen::VectorXd x, y;  // |x - y| = 2 s
  double v = 0.0, r = 0.0;  // v - r = 2 phi > 0
  Eigen::MatrixXd X, Y;
  Jet1D jet;
  Eigen::VectorXd e;      // (x - y) / |x - y|
  double slack = 0.0;     // min eigenvalue of M - diag(X, -Y) at construction
  bool boundary_fallback = false;  // boundary mode fell back to the interior draw

  json to_json() const;
};

// min eigenvalue of M - diag(X, -Y); >= -1e-9 (1 + |M|) certifies the tuple.
double admissibility_slack(const AdmissibleTuple& tuple);

enum class SampleMode { interior, boundary };

// Interior mode: symmetric draws R, S with entries in [-rho, rho],
// rho = 1 + |M|, rescaled to spectral norm <= 0.99 rho (entrywise bounds do
// not control the spectral norm for n >= 2), then X = R - cI, Y = S + cI
// with c = rho + 2 |P|; admissible with strictly positive slack.
// Boundary mode: from an interior tuple, push along a random PSD direction
// pair and bisect the largest admissible step; the result sits within
// 1e-10 (1 + |M|) of the constraint boundary. If the direction never leaves
// the admissible set the interior tuple is returned with
// boundary_fallback = true.
// x is placed at (center + s e), y at (center - s e), center uniform in box;
// r is uniform in [-1, 1] and v = r + 2 phi.
AdmissibleTuple sample_admissible(const Jet1D& jet, int n, std::uint64_t seed, SampleMode mode,
                                  const Box& box);

inline AdmissibleTuple sample_admissible(const Jet1D& jet, int n, std::uint64_t seed,
                                         SampleMode mode) {
  return sample_admissible(jet, n, seed, mode, default_sample_box(n));
}

enum class GradSign { nonneg, any };

struct JetFamilyOptions {
  GradSign grad_sign = GradSign::nonneg;
  bool include_convex = true;
  double min_grad = 1e-8;  // |phi'| below this is excluded from sampling
};

// Jets drawn from a documented family evaluated at random points:
//   a atan(b s)   (concave, increasing),
//   a s - b s^2   (concave; phi' changes sign past the vertex),
//   a s^2         (convex, increasing),
// with a, b > 0 and s chosen to keep phi > 0. t is uniform in [0, 1].
Jet1D sample_jet(Rng& rng, const JetFamilyOptions& options = {});

struct Lemma41Report {
  bool x_le_y = false;    // max eigenvalue of X - Y <= tol
  bool trace_ok = false;  // tr(X - Y) <= 2 phi'' + tol
  double slack = 0.0;     // 2 phi'' - tr(X - Y)
  double max_eig_xy = 0.0;
};

Lemma41Report check_lemma41(const AdmissibleTuple& tuple, double tol);

}  // namespace mocpde
