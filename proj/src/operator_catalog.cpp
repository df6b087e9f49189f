#include "mocpde/operator_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "mocpde/onedim.hpp"

namespace mocpde {

// ---------------------------------------------------------------------------
// Jet validation
// ---------------------------------------------------------------------------

void Jet1D::validate() const {
  if (!(std::isfinite(t) && std::isfinite(s) && std::isfinite(phi) && std::isfinite(dphi) &&
        std::isfinite(d2phi)))
    fail(errc::invalid_argument, "Jet1D: non-finite component");
  if (!(t >= 0.0)) fail(errc::invalid_argument, "Jet1D: t must be >= 0");
  if (!(s > 0.0)) fail(errc::invalid_argument, "Jet1D: s must be > 0");
  if (!(phi > 0.0)) fail(errc::invalid_argument, "Jet1D: phi must be > 0 (v - r = 2 phi > 0)");
}

// ---------------------------------------------------------------------------
// Pucci extremal operators
// ---------------------------------------------------------------------------

namespace {

void check_pucci_constants(double lambda, double Lambda) {
  if (!(lambda > 0.0 && Lambda >= lambda))
    fail(errc::invalid_argument, "Pucci: need 0 < lambda <= Lambda");
}

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& X) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(errc::numerics, "eigendecomposition failed");
  return es.eigenvalues();
}

}  // namespace

double pucci_plus_value(const Eigen::MatrixXd& X, double lambda, double Lambda) {
  check_pucci_constants(lambda, Lambda);
  const Eigen::VectorXd ev = sym_eigenvalues(X);
  double v = 0.0;
  for (int i = 0; i < ev.size(); ++i) v += ev[i] > 0 ? Lambda * ev[i] : lambda * ev[i];
  return v;
}

double pucci_minus_value(const Eigen::MatrixXd& X, double lambda, double Lambda) {
  check_pucci_constants(lambda, Lambda);
  const Eigen::VectorXd ev = sym_eigenvalues(X);
  double v = 0.0;
  for (int i = 0; i < ev.size(); ++i) v += ev[i] > 0 ? lambda * ev[i] : Lambda * ev[i];
  return v;
}

// ---------------------------------------------------------------------------
// eval_F
// ---------------------------------------------------------------------------

namespace {

double call_or_zero(const FieldFn& f, const Eigen::VectorXd& x) { return f ? f(x) : 0.0; }

// tr[(alpha P + beta (I - P)) X] written as beta tr X + (alpha - beta) e'Xe.
double quasilinear_trace(double alpha, double beta, const Eigen::VectorXd& unit_p,
                         const Eigen::MatrixXd& X) {
  const double radial = unit_p.dot(X * unit_p);
  return beta * X.trace() + (alpha - beta) * radial;
}

}  // namespace

double eval_F(const OperatorSpec& op, double t, const Eigen::VectorXd& x, double r,
              const Eigen::VectorXd& p, const Eigen::MatrixXd& X) {
  const auto n = x.size();
  if (p.size() != n || X.rows() != n || X.cols() != n) {
    std::ostringstream os;
    os << "eval_F: inconsistent dimensions (x: " << n << ", p: " << p.size() << ", X: " << X.rows()
       << "x" << X.cols() << ")";
    fail(errc::dimension_mismatch, os.str());
  }
  const double scale = 1.0 + X.cwiseAbs().maxCoeff();
  const double asym = (X - X.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale)
    fail(errc::not_symmetric, "eval_F: X is not symmetric (max asymmetry " + std::to_string(asym) + ")");
  const Eigen::MatrixXd Xs = 0.5 * (X + X.transpose());

  switch (op.kind) {
    case OperatorKind::LinearElliptic: {
      const auto& pr = std::get<LinearEllipticParams>(op.params);
      double v = -Xs.trace() - pr.V * r - call_or_zero(pr.h, x);
      if (pr.W) {
        const Eigen::VectorXd w = pr.W(x);
        if (w.size() != n) fail(errc::dimension_mismatch, "eval_F: W(x) has wrong dimension");
        v -= w.dot(p);
      }
      return v;
    }
    case OperatorKind::QuasilinearIsotropic: {
      const auto& pr = std::get<QuasilinearIsotropicParams>(op.params);
      const double q = p.norm();
      Eigen::VectorXd unit_p;
      if (q < 1e-300) {
        // p = 0 continuation: radial direction fixed to e1.
        unit_p = Eigen::VectorXd::Zero(n);
        unit_p[0] = 1.0;
      } else {
        unit_p = p / q;
      }
      return -quasilinear_trace(pr.alpha(q), pr.beta(q), unit_p, Xs);
    }
    case OperatorKind::PucciMinus: {
      const auto& pr = std::get<PucciParams>(op.params);
      return -pucci_minus_value(Xs, pr.lambda, pr.Lambda);
    }
    case OperatorKind::PucciPlus: {
      const auto& pr = std::get<PucciParams>(op.params);
      return -pucci_plus_value(Xs, pr.lambda, pr.Lambda);
    }
    case OperatorKind::GradientScaledPucci: {
      const auto& pr = std::get<GradientScaledPucciParams>(op.params);
      const double q = p.norm();
      const double scale_q = pr.gamma == 0.0 ? 1.0 : std::pow(q, pr.gamma);
      const double core = pr.plus ? pucci_plus_value(Xs, pr.lambda, pr.Lambda)
                                  : pucci_minus_value(Xs, pr.lambda, pr.Lambda);
      return -scale_q * core - pr.K * r + call_or_zero(pr.x_term, x);
    }
    case OperatorKind::ProperXIndependent: {
      const auto& pr = std::get<ProperParams>(op.params);
      return -pucci_minus_value(Xs, pr.pucci.lambda, pr.pucci.Lambda) + pr.r_coeff * r;
    }
    case OperatorKind::GradientDiffusionMatrix: {
      const auto& pr = std::get<GradientDiffusionParams>(op.params);
      const Eigen::MatrixXd A = pr.A(p, t);
      if (A.rows() != n || A.cols() != n)
        fail(errc::dimension_mismatch, "eval_F: A(p, t) has wrong dimension");
      return -(A * Xs).trace();
    }
  }
  fail(errc::invalid_argument, "eval_F: unknown operator kind");
}

// ---------------------------------------------------------------------------
// eval_f
// ---------------------------------------------------------------------------

double eval_f_raw(const OneDimOp& od, double t, double s, double phi, double dphi, double d2phi,
                  double cap) {
  switch (od.kind) {
    case OneDimKind::Linear1D: {
      const auto& pr = std::get<Linear1DParams>(od.params);
      double v = -pr.lambda0 * d2phi - pr.K * std::abs(dphi) - pr.V * phi - pr.L * s;
      if (pr.omega_h) v -= pr.omega_h(s);
      return v;
    }
    case OneDimKind::Quasilinear1D: {
      const auto& pr = std::get<Quasilinear1DParams>(od.params);
      const double lam = std::min(pr.lambda(std::abs(dphi), t), std::min(cap, pr.diffusivity_cap));
      return -lam * d2phi - pr.K * phi - pr.L * s;
    }
    case OneDimKind::Zero:
      return 0.0;
    case OneDimKind::Curvature1D: {
      const auto& pr = std::get<Curvature1DParams>(od.params);
      const double alpha = std::min(pr.alpha(dphi), cap);
      return -alpha * d2phi + (pr.n - 1) * t_kappa(pr.kappa, s) * dphi * pr.beta(dphi);
    }
  }
  fail(errc::invalid_argument, "eval_f: unknown one-dimensional kind");
}

double eval_f(const OneDimOp& od, const Jet1D& jet) {
  jet.validate();
  return eval_f_raw(od, jet.t, jet.s, jet.phi, jet.dphi, jet.d2phi,
                    std::numeric_limits<double>::infinity());
}

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

OperatorSpec OperatorSpec::linear_elliptic(VectorFieldFn W, double V, FieldFn h, ScalarFn omega_h,
                                           double sup_W, json descriptor) {
  OperatorSpec op;
  op.kind = OperatorKind::LinearElliptic;
  op.params = LinearEllipticParams{std::move(W), V, std::move(h), std::move(omega_h), sup_W};
  op.descriptor = std::move(descriptor);
  return op;
}

OperatorSpec OperatorSpec::quasilinear_isotropic(ScalarFn alpha, ScalarFn beta, json descriptor) {
  OperatorSpec op;
  op.kind = OperatorKind::QuasilinearIsotropic;
  op.params = QuasilinearIsotropicParams{std::move(alpha), std::move(beta)};
  op.descriptor = std::move(descriptor);
  return op;
}

OperatorSpec OperatorSpec::pucci_plus(double lambda, double Lambda) {
  check_pucci_constants(lambda, Lambda);
  OperatorSpec op;
  op.kind = OperatorKind::PucciPlus;
  op.params = PucciParams{lambda, Lambda};
  op.descriptor = {{"kind", "pucci-plus"}, {"lambda", lambda}, {"Lambda", Lambda}};
  return op;
}

OperatorSpec OperatorSpec::pucci_minus(double lambda, double Lambda) {
  check_pucci_constants(lambda, Lambda);
  OperatorSpec op;
  op.kind = OperatorKind::PucciMinus;
  op.params = PucciParams{lambda, Lambda};
  op.descriptor = {{"kind", "pucci-minus"}, {"lambda", lambda}, {"Lambda", Lambda}};
  return op;
}

OperatorSpec OperatorSpec::gradient_scaled_pucci(GradientScaledPucciParams p, json descriptor) {
  check_pucci_constants(p.lambda, p.Lambda);
  if (p.gamma < 0) fail(errc::invalid_argument, "gradient-scaled Pucci: gamma must be >= 0");
  OperatorSpec op;
  op.kind = OperatorKind::GradientScaledPucci;
  op.params = std::move(p);
  op.descriptor = std::move(descriptor);
  return op;
}

OperatorSpec OperatorSpec::proper(double lambda, double Lambda, double r_coeff) {
  check_pucci_constants(lambda, Lambda);
  if (r_coeff < 0) fail(errc::invalid_argument, "proper operator: r_coeff must be >= 0");
  OperatorSpec op;
  op.kind = OperatorKind::ProperXIndependent;
  op.params = ProperParams{{lambda, Lambda}, r_coeff};
  op.descriptor = {{"kind", "proper"}, {"lambda", lambda}, {"Lambda", Lambda}, {"r_coeff", r_coeff}};
  return op;
}

OperatorSpec OperatorSpec::gradient_diffusion(MatrixFieldFn A, ScalarTFn alpha_lower,
                                              ScalarTFn lambda_upper, json descriptor) {
  OperatorSpec op;
  op.kind = OperatorKind::GradientDiffusionMatrix;
  op.params = GradientDiffusionParams{std::move(A), std::move(alpha_lower), std::move(lambda_upper)};
  op.descriptor = std::move(descriptor);
  return op;
}

OneDimOp OneDimOp::linear(Linear1DParams p, json descriptor) {
  OneDimOp od;
  od.kind = OneDimKind::Linear1D;
  od.params = std::move(p);
  od.descriptor = std::move(descriptor);
  return od;
}

OneDimOp OneDimOp::quasilinear(Quasilinear1DParams p, json descriptor) {
  if (!p.lambda) fail(errc::invalid_argument, "Quasilinear1D: lambda callable required");
  OneDimOp od;
  od.kind = OneDimKind::Quasilinear1D;
  od.params = std::move(p);
  od.descriptor = std::move(descriptor);
  return od;
}

OneDimOp OneDimOp::zero() {
  OneDimOp od;
  od.kind = OneDimKind::Zero;
  od.descriptor = {{"kind", "zero"}};
  return od;
}

OneDimOp OneDimOp::curvature(Curvature1DParams p, json descriptor) {
  if (p.n < 2) fail(errc::invalid_argument, "Curvature1D: dimension n must be >= 2");
  if (!p.alpha || !p.beta) fail(errc::invalid_argument, "Curvature1D: alpha, beta required");
  OneDimOp od;
  od.kind = OneDimKind::Curvature1D;
  od.params = std::move(p);
  od.descriptor = std::move(descriptor);
  return od;
}

// ---------------------------------------------------------------------------
// Companion construction
// ---------------------------------------------------------------------------

double estimate_sup_norm(const VectorFieldFn& W, const Box& box, int samples) {
  if (!W) return 0.0;
  if (samples < 1) fail(errc::invalid_argument, "estimate_sup_norm: samples >= 1");
  Rng rng(0x5eedULL);
  double best = 0.0;
  for (int i = 0; i < samples; ++i) best = std::max(best, W(box.sample(rng)).norm());
  return best;
}

ScalarFn modulus_of_function(const FieldFn& h, const Box& box, int grid_per_axis) {
  if (!h) return [](double) { return 0.0; };
  const int n = box.dim();
  // Keep the pair count manageable in higher dimensions.
  int per_axis = grid_per_axis;
  while (std::pow(per_axis, n) > 2000 && per_axis > 4) --per_axis;

  std::vector<Eigen::VectorXd> pts;
  std::vector<double> vals;
  std::vector<int> idx(n, 0);
  const long total = static_cast<long>(std::pow(per_axis, n));
  pts.reserve(total);
  for (long k = 0; k < total; ++k) {
    Eigen::VectorXd x(n);
    long rem = k;
    for (int a = 0; a < n; ++a) {
      const int i = static_cast<int>(rem % per_axis);
      rem /= per_axis;
      x[a] = box.lo[a] + (box.hi[a] - box.lo[a]) * i / (per_axis - 1);
    }
    pts.push_back(x);
    vals.push_back(h(x));
  }

  const double s_max = 0.5 * (box.hi - box.lo).norm();
  const int bins = 64;
  auto table = std::make_shared<std::vector<double>>(bins, 0.0);
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const double s = 0.5 * (pts[a] - pts[b]).norm();
      const double val = 0.5 * std::abs(vals[a] - vals[b]);
      int k = std::min(bins - 1, static_cast<int>(s / s_max * bins));
      (*table)[k] = std::max((*table)[k], val);
    }
  }
  // Nondecreasing envelope; a modulus must not dip.
  for (int k = 1; k < bins; ++k) (*table)[k] = std::max((*table)[k], (*table)[k - 1]);

  const double ds = s_max / bins;
  return [table, ds, bins](double s) {
    if (s <= 0.0) return 0.0;
    const int k = std::min(bins - 1, static_cast<int>(s / ds));
    return (*table)[k];
  };
}

OneDimOp natural_companion(const OperatorSpec& op, const Box& box) {
  switch (op.kind) {
    case OperatorKind::LinearElliptic: {
      const auto& pr = std::get<LinearEllipticParams>(op.params);
      Linear1DParams f;
      f.lambda0 = 1.0;
      f.K = pr.sup_W >= 0 ? pr.sup_W : estimate_sup_norm(pr.W, box);
      f.V = pr.V;
      f.omega_h = pr.omega_h ? pr.omega_h : modulus_of_function(pr.h, box);
      return OneDimOp::linear(std::move(f), {{"kind", "linear-1d"}, {"derived-from", "linear-elliptic"}});
    }
    case OperatorKind::QuasilinearIsotropic: {
      const auto& pr = std::get<QuasilinearIsotropicParams>(op.params);
      Quasilinear1DParams f;
      const ScalarFn alpha = pr.alpha;
      f.lambda = [alpha](double q, double) { return alpha(q); };
      f.diffusivity_cap = pr.diffusivity_cap;
      return OneDimOp::quasilinear(std::move(f), {{"kind", "quasilinear-1d"}, {"derived-from", "quasilinear-isotropic"}});
    }
    case OperatorKind::PucciMinus:
    case OperatorKind::PucciPlus: {
      const auto& pr = std::get<PucciParams>(op.params);
      return OneDimOp::linear({pr.lambda, 0.0, 0.0, 0.0, nullptr},
                              {{"kind", "linear-1d"}, {"lambda0", pr.lambda}});
    }
    case OperatorKind::GradientScaledPucci: {
      const auto& pr = std::get<GradientScaledPucciParams>(op.params);
      Quasilinear1DParams f;
      const double lam = pr.lambda, gamma = pr.gamma;
      f.lambda = [lam, gamma](double q, double) { return gamma == 0.0 ? lam : lam * std::pow(q, gamma); };
      f.K = pr.K;
      f.L = pr.L;
      return OneDimOp::quasilinear(std::move(f), {{"kind", "quasilinear-1d"}, {"derived-from", "gradient-scaled-pucci"}});
    }
    case OperatorKind::ProperXIndependent:
      return OneDimOp::zero();
    case OperatorKind::GradientDiffusionMatrix: {
      const auto& pr = std::get<GradientDiffusionParams>(op.params);
      Quasilinear1DParams f;
      f.lambda = pr.alpha_lower;
      return OneDimOp::quasilinear(std::move(f), {{"kind", "quasilinear-1d"}, {"derived-from", "gradient-diffusion"}});
    }
  }
  fail(errc::invalid_argument, "natural_companion: unknown operator kind");
}

// ---------------------------------------------------------------------------
// Named coefficient tokens (documented in the README)
// ---------------------------------------------------------------------------

namespace {

ScalarFn scalar_token(const std::string& tok) {
  if (tok == "zero") return [](double) { return 0.0; };
  if (tok == "one") return [](double) { return 1.0; };
  if (tok == "inv-1p-q2") return [](double q) { return 1.0 / (1.0 + q * q); };
  if (tok.rfind("const:", 0) == 0) {
    const double c = std::stod(tok.substr(6));
    return [c](double) { return c; };
  }
  if (tok.rfind("plaplace-alpha:", 0) == 0) {
    const double p = std::stod(tok.substr(15));
    return [p](double q) { return (p - 1.0) * std::pow(std::abs(q), p - 2.0); };
  }
  if (tok.rfind("plaplace-beta:", 0) == 0) {
    const double p = std::stod(tok.substr(14));
    return [p](double q) { return std::pow(std::abs(q), p - 2.0); };
  }
  if (tok.rfind("pow:", 0) == 0) {
    const auto rest = tok.substr(4);
    const auto sep = rest.find(':');
    if (sep == std::string::npos) fail(errc::config, "pow token needs pow:<c>:<gamma>");
    const double c = std::stod(rest.substr(0, sep));
    const double g = std::stod(rest.substr(sep + 1));
    return [c, g](double q) { return c * std::pow(std::abs(q), g); };
  }
  fail(errc::config, "unknown scalar coefficient token '" + tok + "'");
}

ScalarFn modulus_token(const std::string& tok) {
  if (tok == "zero") return nullptr;
  if (tok == "min-s-1") return [](double s) { return std::min(s, 1.0); };
  if (tok.rfind("lipschitz:", 0) == 0) {
    const double c = std::stod(tok.substr(10));
    return [c](double s) { return c * s; };
  }
  fail(errc::config, "unknown modulus token '" + tok + "'");
}

FieldFn field_token(const std::string& tok) {
  if (tok == "zero") return nullptr;
  if (tok == "sin-x1") return [](const Eigen::VectorXd& x) { return std::sin(x[0]); };
  fail(errc::config, "unknown field token '" + tok + "'");
}

VectorFieldFn vector_field_token(const std::string& tok) {
  if (tok == "zero") return nullptr;
  if (tok == "sin-cos")
    // (sin x1, cos x2, 0, ...) in any dimension; sup norm sqrt(2) for n >= 2.
    return [](const Eigen::VectorXd& x) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(x.size());
      w[0] = std::sin(x[0]);
      if (x.size() > 1) w[1] = std::cos(x[1]);
      return w;
    };
  fail(errc::config, "unknown vector-field token '" + tok + "'");
}

// A(p, t) = (1 + t/2) (I - p (x) p / (1 + |p|^2)); smallest eigenvalue
// (1 + t/2) / (1 + |p|^2), largest (1 + t/2).
MatrixFieldFn mcf_scaled_matrix() {
  return [](const Eigen::VectorXd& p, double t) {
    const auto n = p.size();
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - p * p.transpose() / (1.0 + p.squaredNorm());
    return Eigen::MatrixXd((1.0 + 0.5 * t) * A);
  };
}

}  // namespace

OperatorSpec operator_from_json(const json& j) {
  if (!j.contains("kind")) fail(errc::config, "operator JSON needs a 'kind' field");
  const std::string kind = j.at("kind");
  if (kind == "linear-elliptic") {
    auto W = vector_field_token(j.value("W", "zero"));
    auto h = field_token(j.value("h", "zero"));
    auto om = modulus_token(j.value("omega_h", "zero"));
    double sup_W = j.value("sup_W", W ? -1.0 : 0.0);  // -1 = estimate on demand
    return OperatorSpec::linear_elliptic(std::move(W), j.value("V", 0.0), std::move(h),
                                         std::move(om), sup_W, j);
  }
  if (kind == "quasilinear-isotropic") {
    auto op = OperatorSpec::quasilinear_isotropic(scalar_token(j.value("alpha", "one")),
                                                  scalar_token(j.value("beta", "one")), j);
    std::get<QuasilinearIsotropicParams>(op.params).diffusivity_cap = j.value("cap", 1e3);
    return op;
  }
  if (kind == "pucci-plus") return OperatorSpec::pucci_plus(j.value("lambda", 1.0), j.value("Lambda", 2.0));
  if (kind == "pucci-minus") return OperatorSpec::pucci_minus(j.value("lambda", 1.0), j.value("Lambda", 2.0));
  if (kind == "gradient-scaled-pucci") {
    GradientScaledPucciParams p;
    p.lambda = j.value("lambda", 1.0);
    p.Lambda = j.value("Lambda", 2.0);
    p.gamma = j.value("gamma", 0.0);
    p.plus = j.value("plus", true);
    p.K = j.value("K", 0.0);
    p.L = j.value("L", 0.0);
    p.x_term = field_token(j.value("x_term", "zero"));
    return OperatorSpec::gradient_scaled_pucci(std::move(p), j);
  }
  if (kind == "proper")
    return OperatorSpec::proper(j.value("lambda", 1.0), j.value("Lambda", 2.0), j.value("r_coeff", 0.0));
  if (kind == "gradient-diffusion") {
    const std::string tok = j.value("A", "mcf-scaled");
    if (tok != "mcf-scaled") fail(errc::config, "unknown diffusion-matrix token '" + tok + "'");
    return OperatorSpec::gradient_diffusion(
        mcf_scaled_matrix(), [](double q, double t) { return (1.0 + 0.5 * t) / (1.0 + q * q); },
        [](double, double t) { return 1.0 + 0.5 * t; }, j);
  }
  fail(errc::config, "unknown operator kind '" + kind + "'");
}

OneDimOp onedim_from_json(const json& j) {
  if (!j.contains("kind")) fail(errc::config, "one-dimensional operator JSON needs a 'kind' field");
  const std::string kind = j.at("kind");
  if (kind == "zero") return OneDimOp::zero();
  if (kind == "linear-1d") {
    Linear1DParams p;
    p.lambda0 = j.value("lambda0", 1.0);
    p.K = j.value("K", 0.0);
    p.V = j.value("V", 0.0);
    p.L = j.value("L", 0.0);
    p.omega_h = modulus_token(j.value("omega_h", "zero"));
    return OneDimOp::linear(std::move(p), j);
  }
  if (kind == "quasilinear-1d") {
    Quasilinear1DParams p;
    const ScalarFn lam = scalar_token(j.value("lambda", "one"));
    const bool scaled = j.value("time_scaled", false);  // lambda(q) * (1 + t/2)
    p.lambda = scaled ? ScalarTFn([lam](double q, double t) { return lam(q) * (1.0 + 0.5 * t); })
                      : ScalarTFn([lam](double q, double) { return lam(q); });
    p.K = j.value("K", 0.0);
    p.L = j.value("L", 0.0);
    p.diffusivity_cap = j.value("cap", 1e3);
    return OneDimOp::quasilinear(std::move(p), j);
  }
  if (kind == "curvature-1d") {
    Curvature1DParams p;
    p.alpha = scalar_token(j.value("alpha", "one"));
    p.beta = scalar_token(j.value("beta", "one"));
    p.kappa = j.value("kappa", 0.0);
    p.n = j.value("n", 2);
    return OneDimOp::curvature(std::move(p), j);
  }
  fail(errc::config, "unknown one-dimensional kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Built-in pairs
// ---------------------------------------------------------------------------

namespace {

std::vector<BuiltinPair> make_builtin_pairs() {
  std::vector<BuiltinPair> pairs;

  // 1. heat: F = -tr X, f = -phi''
  pairs.push_back({"heat",
                   OperatorSpec::linear_elliptic(nullptr, 0.0, nullptr, nullptr, 0.0,
                                                 {{"kind", "linear-elliptic"}, {"W", "zero"}, {"V", 0.0}, {"h", "zero"}}),
                   OneDimOp::linear({1.0, 0.0, 0.0, 0.0, nullptr}, {{"kind", "linear-1d"}, {"lambda0", 1.0}}),
                   "linear elliptic with trivial coefficients / linear 1D"});

  // 2. quasilinear-isotropic: the p-Laplacian form at p = 3,
  //    alpha(q) = 2q, beta(q) = q; f = -alpha(|phi'|) phi''
  pairs.push_back({"quasilinear-isotropic",
                   operator_from_json({{"kind", "quasilinear-isotropic"},
                                       {"alpha", "plaplace-alpha:3"},
                                       {"beta", "plaplace-beta:3"}}),
                   onedim_from_json({{"kind", "quasilinear-1d"}, {"lambda", "plaplace-alpha:3"}}),
                   "p-Laplacian (p = 3) / -alpha(phi') phi''"});

  // 3. pucci-plus: F = -M+_{1,2}(X); f = -lambda phi''
  pairs.push_back({"pucci-plus", OperatorSpec::pucci_plus(1.0, 2.0),
                   OneDimOp::linear({1.0, 0.0, 0.0, 0.0, nullptr}, {{"kind", "linear-1d"}, {"lambda0", 1.0}}),
                   "uniformly elliptic / -lambda phi''"});

  // 4. proper: F = -M-_{1,2}(X) + r/2, independent of x; f = 0
  pairs.push_back({"proper", OperatorSpec::proper(1.0, 2.0, 0.5), OneDimOp::zero(),
                   "proper and x-independent / zero"});

  // 5. lipschitz-general: F = -|p| M+_{1,2}(X) - r + sin(x1);
  //    f = -|phi'| phi'' - phi - s
  pairs.push_back({"lipschitz-general",
                   operator_from_json({{"kind", "gradient-scaled-pucci"},
                                       {"lambda", 1.0},
                                       {"Lambda", 2.0},
                                       {"gamma", 1.0},
                                       {"plus", true},
                                       {"K", 1.0},
                                       {"L", 1.0},
                                       {"x_term", "sin-x1"}}),
                   onedim_from_json({{"kind", "quasilinear-1d"}, {"lambda", "pow:1:1"}, {"K", 1.0}, {"L", 1.0}}),
                   "gradient-dependent ellipticity with Lipschitz x and r terms"});

  // 6. graphical-mcf: alpha = 1/(1+q^2), beta = 1; f = -phi''/(1 + phi'^2)
  pairs.push_back({"graphical-mcf",
                   operator_from_json({{"kind", "quasilinear-isotropic"}, {"alpha", "inv-1p-q2"}, {"beta", "one"}}),
                   onedim_from_json({{"kind", "quasilinear-1d"}, {"lambda", "inv-1p-q2"}}),
                   "graphical mean curvature flow / -phi''/(1+phi'^2)"});

  // 7. gradient-diffusion: A(p,t) = (1+t/2)(I - p(x)p/(1+|p|^2));
  //    f = -alpha(phi', t) phi'' with alpha = (1+t/2)/(1+q^2)
  pairs.push_back({"gradient-diffusion",
                   operator_from_json({{"kind", "gradient-diffusion"}, {"A", "mcf-scaled"}}),
                   onedim_from_json({{"kind", "quasilinear-1d"}, {"lambda", "inv-1p-q2"}, {"time_scaled", true}}),
                   "matrix diffusion with gradient and time dependence"});

  return pairs;
}

}  // namespace

const std::vector<BuiltinPair>& builtin_pairs() {
  static const std::vector<BuiltinPair> pairs = make_builtin_pairs();
  return pairs;
}

const BuiltinPair& builtin_pair(const std::string& name) {
  for (const auto& p : builtin_pairs())
    if (p.name == name) return p;
  fail(errc::config, "unknown builtin pair '" + name + "'");
}

}  // namespace mocpde
