#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "mocpde/admissible_sampler.hpp"
#include "mocpde/onedim.hpp"
#include "mocpde/operator_catalog.hpp"
#include "oracles.hpp"

using namespace mocpde;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Eigen::MatrixXd random_symmetric(Rng& rng, int n, double scale) {
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) A(i, j) = A(j, i) = rng.uniform(-scale, scale);
  return A;
}

Eigen::MatrixXd random_psd(Rng& rng, int n, double scale) {
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  return scale * G * G.transpose();
}

Eigen::MatrixXd random_rotation(Rng& rng, int n) {
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ();
  if (Q.determinant() < 0) Q.col(0) *= -1.0;
  return Q;
}

}  // namespace

TEST_CASE("eval_F: linear elliptic with trivial coefficients is -tr X") {
  const auto& heat = builtin_pair("heat");
  const double v = eval_F(heat.F, 0.0, vec2(0.3, -0.7), 0.5, vec2(0, 0), diag2(1, 2));
  CHECK(v == doctest::Approx(-3.0).epsilon(1e-14));
}

TEST_CASE("eval_F: Pucci plus on diag(1,-1) with (1,2)") {
  const auto op = OperatorSpec::pucci_plus(1.0, 2.0);
  const double v = eval_F(op, 0.0, vec2(0, 0), 0.0, vec2(0, 0), diag2(1, -1));
  CHECK(v == doctest::Approx(-1.0).epsilon(1e-14));  // -(2*1 + 1*(-1))
}

TEST_CASE("eval_F: quasilinear isotropic substitution example") {
  const auto& mcf = builtin_pair("graphical-mcf");
  const double v =
      eval_F(mcf.F, 0.0, vec2(0, 0), 0.0, vec2(1, 0), Eigen::MatrixXd::Identity(2, 2));
  CHECK(v == doctest::Approx(-1.5).epsilon(1e-14));  // -(1/2 + 1)
}

TEST_CASE("eval_F: dimension and symmetry validation") {
  const auto op = OperatorSpec::pucci_plus(1.0, 2.0);
  Eigen::MatrixXd bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(eval_F(op, 0, vec2(0, 0), 0, vec2(0, 0), bad), error);
  Eigen::VectorXd x3 = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(eval_F(op, 0, x3, 0, vec2(0, 0), diag2(1, 1)), error);
}

TEST_CASE("eval_f: linear 1D and zero kinds") {
  Jet1D jet{0.0, 1.0, 0.5, 0.3, 2.0};
  const auto lin = OneDimOp::linear({1.0, 0.0, 0.0, 0.0, nullptr});
  CHECK(eval_f(lin, jet) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(eval_f(OneDimOp::zero(), jet) == 0.0);
}

TEST_CASE("eval_f: curvature kind matches the hyperbolic-tangent oracle") {
  const auto f = curvature_f([](double) { return 1.0; }, [](double) { return 1.0; }, -1.0, 2);
  Jet1D jet{0.0, 1.0, 0.5, 1.0, 0.0};
  const double expected = -oracles::cf_tanh(1.0);  // (n-1) T_{-1}(1) * 1 * 1
  CHECK(eval_f(f, jet) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(eval_f(f, jet) == doctest::Approx(-0.7615941559557649).epsilon(1e-10));
}

TEST_CASE("eval_f: curvature pole raises a domain error") {
  const auto f = curvature_f([](double) { return 1.0; }, [](double) { return 1.0; }, 1.0, 3);
  Jet1D jet{0.0, std::numbers::pi / 2.0, 0.5, 1.0, 0.0};
  CHECK_THROWS_AS(eval_f(f, jet), error);
}

TEST_CASE("eval_f: invalid jets are rejected") {
  const auto lin = OneDimOp::linear({});
  CHECK_THROWS_AS(eval_f(lin, Jet1D{0.0, -1.0, 0.5, 0.0, 0.0}), error);
  CHECK_THROWS_AS(eval_f(lin, Jet1D{0.0, 1.0, -0.5, 0.0, 0.0}), error);
}

TEST_CASE("builtin_pairs: exactly seven, with the pinned entries") {
  const auto& pairs = builtin_pairs();
  CHECK(pairs.size() == 7);

  const auto& heat = builtin_pair("heat");
  CHECK(heat.F.kind == OperatorKind::LinearElliptic);
  Jet1D jet{0.0, 1.0, 0.5, 0.0, 3.0};
  CHECK(eval_f(heat.f, jet) == doctest::Approx(-3.0));

  const auto& mcf = builtin_pair("graphical-mcf");
  Jet1D jm{0.0, 1.0, 0.5, 1.0, 2.0};
  CHECK(eval_f(mcf.f, jm) == doctest::Approx(-1.0));  // -2 / (1 + 1)

  const auto& pp = builtin_pair("pucci-plus");
  CHECK(pp.F.kind == OperatorKind::PucciPlus);
  CHECK(eval_f(pp.f, jet) == doctest::Approx(-3.0));  // -lambda phi'' with lambda = 1

  CHECK_THROWS_AS(builtin_pair("no-such-pair"), error);
}

TEST_CASE("degenerate ellipticity of every catalog F under random PSD bumps") {
  Rng rng(42);
  for (const auto& pair : builtin_pairs()) {
    for (int it = 0; it < 1000; ++it) {
      const int n = rng.uniform_int(1, 3);
      const double t = rng.uniform(0.0, 1.0);
      Eigen::VectorXd x(n), p(n);
      for (int i = 0; i < n; ++i) {
        x[i] = rng.uniform(-3.0, 3.0);
        p[i] = rng.uniform(-2.0, 2.0);
      }
      const double r = rng.uniform(-1.0, 1.0);
      const Eigen::MatrixXd X = random_symmetric(rng, n, 2.0);
      const Eigen::MatrixXd Z = random_psd(rng, n, 0.5);
      const double before = eval_F(pair.F, t, x, r, p, X);
      const double after = eval_F(pair.F, t, x, r, p, X + Z);
      CHECK(after <= before + 1e-10 * (1.0 + Z.norm()));
    }
  }
}

TEST_CASE("properness: the proper kind is nondecreasing in r") {
  const auto& prop = builtin_pair("proper");
  Rng rng(7);
  for (int it = 0; it < 300; ++it) {
    const int n = rng.uniform_int(1, 3);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n), p = Eigen::VectorXd::Zero(n);
    const Eigen::MatrixXd X = random_symmetric(rng, n, 2.0);
    const double r1 = rng.uniform(-2.0, 2.0);
    const double r2 = r1 + rng.uniform(0.0, 2.0);
    CHECK(eval_F(prop.F, 0, x, r1, p, X) <= eval_F(prop.F, 0, x, r2, p, X) + 1e-14);
  }
}

TEST_CASE("Pucci identity M+(X) = -M-(-X) on random symmetric matrices") {
  Rng rng(11);
  for (int it = 0; it < 1000; ++it) {
    const int n = rng.uniform_int(1, 4);
    const Eigen::MatrixXd X = random_symmetric(rng, n, 3.0);
    const double plus = pucci_plus_value(X, 1.0, 2.5);
    const double minus = pucci_minus_value(-X, 1.0, 2.5);
    CHECK(std::abs(plus + minus) <= 1e-12 * (1.0 + std::abs(plus)));
  }
}

TEST_CASE("Pucci values match the sup-of-linear-operators oracle") {
  Rng rng(13);
  for (int it = 0; it < 200; ++it) {
    const int n = rng.uniform_int(1, 3);
    const Eigen::MatrixXd X = random_symmetric(rng, n, 2.0);
    CHECK(pucci_plus_value(X, 1.0, 2.0) ==
          doctest::Approx(oracles::pucci_plus_reference(X, 1.0, 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("quasilinear isotropic rotation invariance") {
  const auto& mcf = builtin_pair("graphical-mcf");
  Rng rng(17);
  for (int it = 0; it < 300; ++it) {
    const int n = rng.uniform_int(2, 3);
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p[i] = rng.uniform(-2.0, 2.0);
    const Eigen::MatrixXd X = random_symmetric(rng, n, 2.0);
    const Eigen::MatrixXd R = random_rotation(rng, n);
    const Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    const double base = eval_F(mcf.F, 0, z, 0, p, X);
    const double rotated = eval_F(mcf.F, 0, z, 0, R * p, R * X * R.transpose());
    CHECK(std::abs(base - rotated) <= 1e-10 * (1.0 + std::abs(base)));
  }
}

TEST_CASE("estimate_sup_norm: sin-cos drift field has sup sqrt(2)") {
  const auto op = operator_from_json({{"kind", "linear-elliptic"}, {"W", "sin-cos"}});
  const auto& pr = std::get<LinearEllipticParams>(op.params);
  const double k = estimate_sup_norm(pr.W, default_sample_box(2));
  CHECK(k == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));
  CHECK(k <= std::sqrt(2.0) + 1e-12);
}

TEST_CASE("modulus_of_function: nondecreasing, zero at zero, dominates pairs") {
  const FieldFn h = [](const Eigen::VectorXd& x) { return std::sin(x[0]); };
  const Box box = default_sample_box(2);
  const auto om = modulus_of_function(h, box);
  CHECK(om(0.0) == 0.0);
  double prev = 0.0;
  for (double s = 0.05; s < 4.0; s += 0.05) {
    const double v = om(s);
    CHECK(v >= prev - 1e-14);
    prev = v;
  }
  // The tabulated modulus must dominate concrete pairs up to grid resolution.
  Rng rng(3);
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd a = box.sample(rng), b = box.sample(rng);
    const double s = 0.5 * (a - b).norm();
    CHECK(0.5 * std::abs(h(a) - h(b)) <= om(s) + 5e-2);
  }
}

TEST_CASE("natural_companion: shapes per kind") {
  const Box box = default_sample_box(2);
  CHECK(natural_companion(OperatorSpec::pucci_plus(0.7, 2.0), box).kind == OneDimKind::Linear1D);
  CHECK(natural_companion(builtin_pair("proper").F, box).kind == OneDimKind::Zero);
  CHECK(natural_companion(builtin_pair("graphical-mcf").F, box).kind == OneDimKind::Quasilinear1D);

  // Pucci companion keeps the lower constant.
  const auto f = natural_companion(OperatorSpec::pucci_plus(0.7, 2.0), box);
  Jet1D jet{0.0, 1.0, 0.5, 0.0, 1.0};
  CHECK(eval_f(f, jet) == doctest::Approx(-0.7));
}

TEST_CASE("operator JSON round-trips through the documented descriptors") {
  for (const auto& pair : builtin_pairs()) {
    REQUIRE(!pair.F.descriptor.is_null());
    const OperatorSpec rebuilt = operator_from_json(pair.F.descriptor);
    CHECK(rebuilt.kind == pair.F.kind);
    Rng rng(23);
    Eigen::VectorXd x = vec2(0.4, -1.1), p = vec2(0.6, 0.2);
    const Eigen::MatrixXd X = random_symmetric(rng, 2, 1.5);
    CHECK(eval_F(rebuilt, 0.3, x, 0.2, p, X) ==
          doctest::Approx(eval_F(pair.F, 0.3, x, 0.2, p, X)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(operator_from_json({{"kind", "nope"}}), error);
}

TEST_CASE("Pucci constants are validated on construction") {
  CHECK_THROWS_AS(OperatorSpec::pucci_plus(2.0, 1.0), error);
  CHECK_THROWS_AS(OperatorSpec::pucci_minus(0.0, 1.0), error);
  CHECK_THROWS_AS(OperatorSpec::proper(1.0, 2.0, -0.5), error);
}
