// Descriptors and numeric evaluation of fully nonlinear operators
// F(t, x, r, p, X) and their one-dimensional companions f(t, s, phi, phi',
// phi''), plus the built-in catalog of (F, f) pairs.
#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "mocpde/common.hpp"

namespace mocpde {

using json = nlohmann::json;

using ScalarFn = std::function<double(double)>;            // q or s -> value
using ScalarTFn = std::function<double(double, double)>;   // (q, t) -> value
using FieldFn = std::function<double(const Eigen::VectorXd&)>;
using VectorFieldFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using MatrixFieldFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&, double)>;

// ---------------------------------------------------------------------------
// Full operators F
// ---------------------------------------------------------------------------

enum class OperatorKind {
  LinearElliptic,
  QuasilinearIsotropic,
  PucciMinus,
  PucciPlus,
  GradientScaledPucci,
  ProperXIndependent,
  GradientDiffusionMatrix,
};

// F = -tr(X) - <W(x), p> - V r - h(x)
struct LinearEllipticParams {
  VectorFieldFn W;      // drift field; empty means 0
  double V = 0.0;       // zeroth-order coefficient
  FieldFn h;            // source; empty means 0
  ScalarFn omega_h;     // modulus of h in the half-distance convention
                        // (|h(x)-h(y)| <= 2 omega_h(|x-y|/2)); empty means 0
  double sup_W = 0.0;   // K = sup |W|, exact or estimated
};

// F = -tr[(alpha(|p|) P_p + beta(|p|)(I - P_p)) X],  P_p = p (x) p / |p|^2
struct QuasilinearIsotropicParams {
  ScalarFn alpha;             // radial diffusivity
  ScalarFn beta;              // tangential diffusivity
  double diffusivity_cap = 1e3;  // clamp applied by the grid solver and CFL
};

// F = -M^{+/-}_{lambda, Lambda}(X); the kind tag picks the sign.
struct PucciParams {
  double lambda = 1.0;
  double Lambda = 2.0;
};

// F = -|p|^gamma M^{+/-}_{lambda, Lambda}(X) - K r + x_term(x),
// with |x_term(x) - x_term(y)| <= L |x - y|.
struct GradientScaledPucciParams {
  double lambda = 1.0;
  double Lambda = 2.0;
  double gamma = 0.0;
  bool plus = true;
  double K = 0.0;
  double L = 0.0;
  FieldFn x_term;  // empty means 0
};

// F = -M^-_{lambda, Lambda}(X) + r_coeff * r, independent of x,
// nondecreasing in r (r_coeff >= 0).
struct ProperParams {
  PucciParams pucci;
  double r_coeff = 0.0;
};

// F = -tr(A(p, t) X) with A >= alpha_lower(|p|, t) I.
struct GradientDiffusionParams {
  MatrixFieldFn A;
  ScalarTFn alpha_lower;   // lower ellipticity alpha(R, t)
  ScalarTFn lambda_upper;  // upper bound on eigenvalues of A, used by the CFL
};

struct OperatorSpec {
  OperatorKind kind = OperatorKind::LinearElliptic;
  std::variant<LinearEllipticParams, QuasilinearIsotropicParams, PucciParams,
               GradientScaledPucciParams, ProperParams, GradientDiffusionParams>
      params = LinearEllipticParams{};
  json descriptor;  // serialized form with documented field names

  static OperatorSpec linear_elliptic(VectorFieldFn W, double V, FieldFn h, ScalarFn omega_h,
                                      double sup_W, json descriptor = {});
  static OperatorSpec quasilinear_isotropic(ScalarFn alpha, ScalarFn beta, json descriptor = {});
  static OperatorSpec pucci_plus(double lambda, double Lambda);
  static OperatorSpec pucci_minus(double lambda, double Lambda);
  static OperatorSpec gradient_scaled_pucci(GradientScaledPucciParams p, json descriptor = {});
  static OperatorSpec proper(double lambda, double Lambda, double r_coeff);
  static OperatorSpec gradient_diffusion(MatrixFieldFn A, ScalarTFn alpha_lower,
                                         ScalarTFn lambda_upper, json descriptor = {});
};

// ---------------------------------------------------------------------------
// One-dimensional operators f
// ---------------------------------------------------------------------------

enum class OneDimKind { Linear1D, Quasilinear1D, Zero, Curvature1D };

// f = -lambda0 phi'' - K |phi'| - V phi - L s - omega_h(s)
struct Linear1DParams {
  double lambda0 = 1.0;
  double K = 0.0;
  double V = 0.0;
  double L = 0.0;
  ScalarFn omega_h;  // empty means 0
};

// f = -lambda(|phi'|, t) phi'' - K phi - L s
struct Quasilinear1DParams {
  ScalarTFn lambda;
  double K = 0.0;
  double L = 0.0;
  double diffusivity_cap = 1e3;  // clamp applied by the 1D solver, not by eval_f
};

// f = -alpha(phi') phi'' + (n-1) T_kappa(s) phi' beta(phi')
struct Curvature1DParams {
  ScalarFn alpha;
  ScalarFn beta;
  double kappa = 0.0;
  int n = 2;
};

struct OneDimOp {
  OneDimKind kind = OneDimKind::Zero;
  std::variant<Linear1DParams, Quasilinear1DParams, std::monostate, Curvature1DParams> params =
      std::monostate{};
  json descriptor;

  static OneDimOp linear(Linear1DParams p, json descriptor = {});
  static OneDimOp quasilinear(Quasilinear1DParams p, json descriptor = {});
  static OneDimOp zero();
  static OneDimOp curvature(Curvature1DParams p, json descriptor = {});
};

// Evaluation point of a candidate modulus profile.
struct Jet1D {
  double t = 0.0;    // time, >= 0
  double s = 0.0;    // half-distance, > 0
  double phi = 0.0;  // profile value, > 0 (the constraint v - r = 2 phi > 0)
  double dphi = 0.0;
  double d2phi = 0.0;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

// Evaluates F at (t, x, r, p, X). Validates dimensions and symmetry of X
// (entries within 1e-12 * (1 + max|X|)). Pucci values use a full symmetric
// eigendecomposition; grid approximations live in the solver, not here.
double eval_F(const OperatorSpec& op, double t, const Eigen::VectorXd& x, double r,
              const Eigen::VectorXd& p, const Eigen::MatrixXd& X);

// Evaluates f on a validated jet. Curvature1D with kappa > 0 requires
// s < pi / (2 sqrt(kappa)) and throws errc::domain at or past the pole.
double eval_f(const OneDimOp& od, const Jet1D& jet);

// Unvalidated evaluation used by the solvers: no positivity constraints on
// (s, phi). Gradient-dependent diffusivities are clamped at
// min(cap, kind cap); pass infinity for the exact catalog value. Pole checks
// still apply.
double eval_f_raw(const OneDimOp& od, double t, double s, double phi, double dphi, double d2phi,
                  double cap);

// Pucci extremal operators on eigenvalues: M+ = Lambda e+ + lambda e-,
// M- = lambda e+ + Lambda e- (e+/e- positive/negative eigenvalue sums).
double pucci_plus_value(const Eigen::MatrixXd& X, double lambda, double Lambda);
double pucci_minus_value(const Eigen::MatrixXd& X, double lambda, double Lambda);

// ---------------------------------------------------------------------------
// Built-in catalog
// ---------------------------------------------------------------------------

struct BuiltinPair {
  std::string name;
  OperatorSpec F;
  OneDimOp f;
  std::string note;
};

// The seven shipped (F, f) pairs: heat, quasilinear-isotropic, pucci-plus,
// proper, lipschitz-general, graphical-mcf, gradient-diffusion.
const std::vector<BuiltinPair>& builtin_pairs();
const BuiltinPair& builtin_pair(const std::string& name);

// ---------------------------------------------------------------------------
// Companion construction helpers
// ---------------------------------------------------------------------------

// K = sup |W| estimated by sampling W at `samples` points of the box
// (deterministic stream). The paper-side constant is the exact sup; callers
// may override via LinearEllipticParams::sup_W.
double estimate_sup_norm(const VectorFieldFn& W, const Box& box, int samples = 10000);

// Modulus of continuity of h by brute-force pairwise sup over a sample grid,
// returned as a nondecreasing tabulated function with omega_h(0) = 0. The
// table is built once here; the returned callable is safe for concurrent
// reads.
ScalarFn modulus_of_function(const FieldFn& h, const Box& box, int grid_per_axis = 32);

// The natural one-dimensional companion of an operator spec (the catalog
// pairing rule). For LinearElliptic specs without an explicit sup_W the
// constant is estimated over `box`.
OneDimOp natural_companion(const OperatorSpec& op, const Box& box);

// ---------------------------------------------------------------------------
// JSON addressing (documented field names; see README)
// ---------------------------------------------------------------------------

OperatorSpec operator_from_json(const json& j);
OneDimOp onedim_from_json(const json& j);

}  // namespace mocpde
