#include "mocpde/admissible_sampler.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace mocpde {

namespace {

double min_eigenvalue(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(errc::numerics, "eigendecomposition failed");
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(errc::numerics, "eigendecomposition failed");
  return es.eigenvalues().maxCoeff();
}

double spectral_norm(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(errc::numerics, "eigendecomposition failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd random_symmetric(Rng& rng, int n, double entry_bound) {
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) A(i, j) = A(j, i) = rng.uniform(-entry_bound, entry_bound);
  return A;
}

// Random PSD direction with unit spectral norm; unit normalization keeps the
// two push rates in boundary mode comparable.
Eigen::MatrixXd random_psd_unit(Rng& rng, int n) {
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  Eigen::MatrixXd D = G * G.transpose();
  const double norm = spectral_norm(D);
  if (norm < 1e-12) {
    D = Eigen::MatrixXd::Identity(n, n);
    return D;
  }
  return D / norm;
}

Eigen::VectorXd random_unit_vector(Rng& rng, int n) {
  while (true) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
}

Eigen::MatrixXd constraint_matrix(const Eigen::MatrixXd& M, const Eigen::MatrixXd& X,
                                  const Eigen::MatrixXd& Y) {
  const int n = static_cast<int>(X.rows());
  Eigen::MatrixXd C = M;
  C.topLeftCorner(n, n) -= X;
  C.bottomRightCorner(n, n) += Y;
  return C;
}

}  // namespace

BlockHessian block_hessian(const Jet1D& jet, const Eigen::VectorXd& e) {
  jet.validate();
  const int n = static_cast<int>(e.size());
  if (n < 1) fail(errc::invalid_argument, "block_hessian: empty direction");
  const double norm = e.norm();
  if (norm < 1e-12) fail(errc::invalid_argument, "block_hessian: zero direction vector");
  if (std::abs(norm - 1.0) > 1e-12)
    fail(errc::invalid_argument, "block_hessian: direction must be a unit vector");

  BlockHessian bh;
  bh.n = n;
  const Eigen::MatrixXd ee = e * e.transpose();
  bh.P = 0.5 * jet.d2phi * ee + (jet.dphi / (2.0 * jet.s)) * (Eigen::MatrixXd::Identity(n, n) - ee);
  bh.M.resize(2 * n, 2 * n);
  bh.M.topLeftCorner(n, n) = bh.P;
  bh.M.topRightCorner(n, n) = -bh.P;
  bh.M.bottomLeftCorner(n, n) = -bh.P;
  bh.M.bottomRightCorner(n, n) = bh.P;
  return bh;
}

double admissibility_slack(const AdmissibleTuple& tuple) {
  const BlockHessian bh = block_hessian(tuple.jet, tuple.e);
  return min_eigenvalue(constraint_matrix(bh.M, tuple.X, tuple.Y));
}

AdmissibleTuple sample_admissible(const Jet1D& jet, int n, std::uint64_t seed, SampleMode mode,
                                  const Box& box) {
  jet.validate();
  if (n < 1) fail(errc::invalid_argument, "sample_admissible: dimension must be >= 1");
  if (box.dim() != n) fail(errc::dimension_mismatch, "sample_admissible: box dimension mismatch");

  Rng rng(seed);
  AdmissibleTuple tuple;
  tuple.jet = jet;
  tuple.e = random_unit_vector(rng, n);

  const BlockHessian bh = block_hessian(jet, tuple.e);
  const double p_norm = spectral_norm(bh.P);
  const double m_norm = 2.0 * p_norm;  // spectrum of M is {0} union 2 spec(P)
  const double rho = 1.0 + m_norm;
  const double c = rho + 2.0 * p_norm;

  auto clamp_spectral = [rho](Eigen::MatrixXd A) {
    const double norm = spectral_norm(A);
    const double limit = 0.99 * rho;
    if (norm > limit) A *= limit / norm;
    return A;
  };
  const Eigen::MatrixXd R = clamp_spectral(random_symmetric(rng, n, rho));
  const Eigen::MatrixXd S = clamp_spectral(random_symmetric(rng, n, rho));
  tuple.X = R - c * Eigen::MatrixXd::Identity(n, n);
  tuple.Y = S + c * Eigen::MatrixXd::Identity(n, n);

  if (mode == SampleMode::boundary) {
    // Push directions: independent random PSD pairs for coverage, plus
    // correlated and identity pushes. The latter tighten every constraint
    // direction at once and land near the corner where the trace inequality
    // of Lemma 4.1 is extremal, which is where a wrong companion shows up.
    const int direction_family = rng.uniform_int(0, 2);
    Eigen::MatrixXd D1, D2;
    switch (direction_family) {
      case 0:
        D1 = random_psd_unit(rng, n);
        D2 = random_psd_unit(rng, n);
        break;
      case 1:
        D1 = random_psd_unit(rng, n);
        D2 = D1;
        break;
      default:
        D1 = Eigen::MatrixXd::Identity(n, n);
        D2 = D1;
        break;
    }
    auto slack_at = [&](double tau) {
      return min_eigenvalue(
          constraint_matrix(bh.M, tuple.X + tau * D1, tuple.Y - tau * D2));
    };
    // Bracket the boundary crossing by doubling, then bisect.
    double lo = 0.0, hi = 1.0;
    bool crossed = false;
    while (hi < 1e8) {
      if (slack_at(hi) < 0.0) {
        crossed = true;
        break;
      }
      lo = hi;
      hi *= 2.0;
    }
    if (!crossed) {
      tuple.boundary_fallback = true;  // direction never leaves the admissible set
    } else {
      const double width_tol = 1e-10 * (1.0 + m_norm);
      while (hi - lo > width_tol) {
        const double mid = 0.5 * (lo + hi);
        (slack_at(mid) >= 0.0 ? lo : hi) = mid;
      }
      tuple.X += lo * D1;
      tuple.Y -= lo * D2;
    }
  }

  Eigen::VectorXd center = box.sample(rng);
  tuple.x = center + jet.s * tuple.e;
  tuple.y = center - jet.s * tuple.e;
  tuple.r = rng.uniform(-1.0, 1.0);
  tuple.v = tuple.r + 2.0 * jet.phi;
  tuple.slack = min_eigenvalue(constraint_matrix(bh.M, tuple.X, tuple.Y));
  return tuple;
}

Jet1D sample_jet(Rng& rng, const JetFamilyOptions& options) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Jet1D jet;
    jet.t = rng.uniform(0.0, 1.0);
    const double a = rng.uniform(0.2, 2.0);
    const double b = rng.uniform(0.2, 2.0);
    const int family = rng.uniform_int(0, options.include_convex ? 2 : 1);
    switch (family) {
      case 0: {  // a atan(b s): concave, phi' > 0
        jet.s = rng.uniform(0.1, 2.0);
        const double bs = b * jet.s;
        jet.phi = a * std::atan(bs);
        jet.dphi = a * b / (1.0 + bs * bs);
        jet.d2phi = -2.0 * a * b * b * bs / ((1.0 + bs * bs) * (1.0 + bs * bs));
        break;
      }
      case 1: {  // a s - b s^2: concave; phi' changes sign at s = a/(2b)
        const double s_hi =
            options.grad_sign == GradSign::nonneg ? 0.95 * a / (2.0 * b) : 0.9 * a / b;
        jet.s = rng.uniform(0.05 * s_hi, s_hi);
        jet.phi = a * jet.s - b * jet.s * jet.s;
        jet.dphi = a - 2.0 * b * jet.s;
        jet.d2phi = -2.0 * b;
        break;
      }
      default: {  // a s^2: convex, phi' > 0
        jet.s = rng.uniform(0.1, 2.0);
        jet.phi = a * jet.s * jet.s;
        jet.dphi = 2.0 * a * jet.s;
        jet.d2phi = 2.0 * a;
        break;
      }
    }
    if (jet.phi <= 0.0) continue;
    if (std::abs(jet.dphi) < options.min_grad) continue;
    if (options.grad_sign == GradSign::nonneg && jet.dphi < 0.0) continue;
    return jet;
  }
  fail(errc::numerics, "sample_jet: could not draw a valid jet");
}

Lemma41Report check_lemma41(const AdmissibleTuple& tuple, double tol) {
  Lemma41Report rep;
  const Eigen::MatrixXd diff = tuple.X - tuple.Y;
  rep.max_eig_xy = max_eigenvalue(diff);
  rep.x_le_y = rep.max_eig_xy <= tol;
  const double trace = diff.trace();
  rep.slack = 2.0 * tuple.jet.d2phi - trace;
  rep.trace_ok = trace <= 2.0 * tuple.jet.d2phi + tol;
  return rep;
}

namespace {

json matrix_to_json(const Eigen::MatrixXd& A) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(A(i, j));
    rows.push_back(row);
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

json AdmissibleTuple::to_json() const {
  return {
      {"x", vector_to_json(x)},
      {"y", vector_to_json(y)},
      {"v", v},
      {"r", r},
      {"X", matrix_to_json(X)},
      {"Y", matrix_to_json(Y)},
      {"jet", {{"t", jet.t}, {"s", jet.s}, {"phi", jet.phi}, {"dphi", jet.dphi}, {"d2phi", jet.d2phi}}},
      {"e", vector_to_json(e)},
      {"slack", slack},
      {"boundary_fallback", boundary_fallback},
  };
}

}  // namespace mocpde
