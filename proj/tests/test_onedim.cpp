#include <doctest.h>

#include <cmath>

#include "mocpde/onedim.hpp"
#include "oracles.hpp"

using namespace mocpde;

TEST_CASE("erf_value agrees with the C library implementation") {
  for (double z = -6.0; z <= 6.0; z += 0.0625)
    CHECK(erf_value(z) == doctest::Approx(std::erf(z)).epsilon(1e-13));
  CHECK(erf_value(0.0) == 0.0);
  CHECK(erf_value(8.0) == 1.0);
  CHECK(erf_value(1.0) == doctest::Approx(0.842700792949715).epsilon(1e-12));
}

TEST_CASE("erf_profile: limits and the frozen erf(1) value") {
  CHECK(erf_profile(2.0, 1.0, 0.25) == doctest::Approx(0.842700793).epsilon(1e-9));
  CHECK(erf_profile(2.0, 1e6, 0.25) == doctest::Approx(1.0));  // M/2
  CHECK(erf_profile(2.0, 0.0, 0.25) == 0.0);
  CHECK_THROWS_AS(erf_profile(2.0, 1.0, 0.0), error);
  CHECK_THROWS_AS(erf_profile(2.0, 1.0, -1.0), error);
}

TEST_CASE("erf_profile: increasing in s, decreasing in t") {
  double prev = -1.0;
  for (double s = 0.0; s <= 4.0; s += 0.125) {
    const double v = erf_profile(1.0, s, 0.3);
    CHECK(v >= prev);
    prev = v;
  }
  for (double s : {0.5, 1.0, 2.0}) {
    double prev_t = 1e9;
    for (double t : {0.1, 0.2, 0.4, 0.8}) {
      const double v = erf_profile(1.0, s, t);
      CHECK(v <= prev_t + 1e-15);
      prev_t = v;
    }
  }
}

TEST_CASE("fp: branch values against closed-form constants") {
  // F_2(inf) = sqrt(pi)/2; F_4(inf) = quarter-circle area pi/4.
  CHECK(fp_infinity(2.0) == doctest::Approx(0.8862269254527580).epsilon(1e-10));
  CHECK(fp_infinity(4.0) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-10));
  CHECK(fp(2.0, 0.0) == 0.0);
  CHECK(fp(1.5, 0.0) == 0.0);
  CHECK(fp(3.0, 0.0) == 0.0);
  CHECK_THROWS_AS(fp(1.0, 1.0), error);
  CHECK_THROWS_AS(fp(0.5, 1.0), error);
  CHECK_THROWS_AS(fp_infinity(1.0), error);
}

TEST_CASE("fp: strictly increasing on its support and bounded by fp_infinity") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const double inf = fp_infinity(p);
    // For p > 2 the integrand vanishes past z = 1; strictness holds inside.
    const double z_hi = p > 2.0 ? 0.999 : 3.0;
    double prev = -1.0;
    for (double z = 0.05; z <= z_hi; z += 0.05) {
      const double v = fp(p, z);
      CHECK(v > prev);
      CHECK(v <= inf + 1e-12);
      prev = v;
    }
    if (p > 2.0) CHECK(fp(p, 5.0) == doctest::Approx(inf).epsilon(1e-9));
  }
}

TEST_CASE("p-Laplacian profile constants: p = 2 reproduces 1/(2 sqrt(pi)) and erf") {
  const auto prof = make_plaplace(2.0, 2.0);
  CHECK(prof.rp_printed == 2.0);
  // Gradient-bound coefficient 1/(2 R_p F_p(inf)) at p = 2 is 1/(2 sqrt(pi)).
  const double coeff = 1.0 / (2.0 * prof.rp_printed * prof.fp_inf);
  CHECK(coeff == doctest::Approx(1.0 / (2.0 * std::sqrt(std::numbers::pi))).epsilon(1e-10));

  for (double t : {0.1, 0.25, 1.0})
    for (double s = 0.0; s <= 4.0; s += 0.25)
      CHECK(prof.value(s, t) == doctest::Approx(erf_profile(2.0, s, t)).epsilon(1e-9));
}

TEST_CASE("p-Laplacian profile: boundary value M/2 and zero at the origin") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const auto prof = make_plaplace(p, 2.0);
    CHECK(prof.value(0.0, 1.0) == 0.0);
    CHECK(prof.value(1e4, 1.0) == doctest::Approx(1.0).epsilon(1e-8));  // M/2
  }
}

TEST_CASE("p-Laplacian gradient bound matches the printed normalization") {
  // The closed-form slope at 0 must equal M^{2/p} t^{-1/p} / (2 R_p F_p(inf)).
  for (double p : {1.5, 3.0, 4.0}) {
    const double M = 2.0;
    const auto prof = make_plaplace(p, M);
    for (double t : {0.5, 1.0, 2.0}) {
      const double printed =
          std::pow(M, 2.0 / p) / (2.0 * prof.rp_printed * prof.fp_inf * std::pow(t, 1.0 / p));
      CHECK(prof.gradient_bound(t) == doctest::Approx(printed).epsilon(1e-10));
    }
  }
}

TEST_CASE("residual oracle: the closed forms solve the 1D p-Laplacian flow") {
  CHECK(plaplace_residual(2.0, 2.0) <= 1e-6);
  CHECK(plaplace_residual(1.5, 2.0) <= 1e-2);
  CHECK(plaplace_residual(3.0, 2.0) <= 1e-2);
  CHECK(plaplace_residual(4.0, 2.0) <= 1e-2);
}

TEST_CASE("t_kappa: branch values and the pole") {
  CHECK(t_kappa(0.0, 5.0) == 0.0);
  CHECK(t_kappa(1.0, std::numbers::pi / 4.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t_kappa(-1.0, 1.0) == doctest::Approx(-oracles::cf_tanh(1.0)).epsilon(1e-12));
  CHECK(t_kappa(-1.0, 1.0) == doctest::Approx(-0.76159415595576485).epsilon(1e-10));
  CHECK(t_kappa(4.0, 0.3) == doctest::Approx(2.0 * oracles::cf_tan(0.6)).epsilon(1e-12));
  CHECK_THROWS_AS(t_kappa(1.0, std::numbers::pi / 2.0), error);
  CHECK_THROWS_AS(t_kappa(4.0, std::numbers::pi / 4.0), error);
}

TEST_CASE("b_integral: quadrature against closed forms") {
  CHECK(b_integral([](double) { return 1.0; }, 3.0) == doctest::Approx(4.5).epsilon(1e-10));
  const double b10 = b_integral([](double s) { return 1.0 / (1.0 + s * s); }, 10.0);
  CHECK(b10 == doctest::Approx(0.5 * std::log(101.0)).epsilon(1e-10));
  CHECK_THROWS_AS(b_integral([](double s) { return s - 1.0; }, 3.0), error);
}

TEST_CASE("diverges_heuristic: classifier on the three reference coefficients") {
  CHECK(diverges_heuristic([](double) { return 1.0; }, 64.0) == DivergenceClass::diverges);
  CHECK(diverges_heuristic([](double s) { return 1.0 / (1.0 + s * s); }, 64.0) ==
        DivergenceClass::diverges);
  CHECK(diverges_heuristic([](double s) { return std::exp(-s); }, 64.0) ==
        DivergenceClass::bounded);
  CHECK_THROWS_AS(diverges_heuristic([](double) { return 1.0; }, 1.0), error);
}

TEST_CASE("curvature_f: flat case agrees exactly with -alpha(phi') phi''") {
  const ScalarFn alpha = [](double q) { return 1.0 / (1.0 + q * q); };
  const auto flat = curvature_f(alpha, [](double) { return 1.0; }, 0.0, 3);
  const auto reference =
      OneDimOp::quasilinear({[alpha](double q, double) { return alpha(q); }, 0.0, 0.0, 1e300});
  Rng rng(21);
  for (int it = 0; it < 1000; ++it) {
    Jet1D jet{rng.uniform(0, 1), rng.uniform(0.1, 3.0), rng.uniform(0.1, 2.0),
              rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    CHECK(eval_f(flat, jet) == eval_f(reference, jet));  // T_0 = 0 exactly
  }
  CHECK_THROWS_AS(curvature_f([](double) { return 1.0; }, [](double) { return 1.0; }, 0.0, 1),
                  error);
}

TEST_CASE("solve_1d: erf reproduction from the jump datum") {
  const auto f = OneDimOp::linear({1.0, 0.0, 0.0, 0.0, nullptr});
  const double M = 2.0;
  const auto profiles = solve_1d(
      f, [M](double) { return 0.5 * M; }, 10.0, LeftBc::odd_reflection, RightBc::neumann_zero,
      0.25, 400);
  REQUIRE(profiles.size() == 1);
  const auto& prof = profiles.back();
  CHECK(prof.t == 0.25);
  double worst = 0.0;
  for (std::size_t i = 0; i < prof.s.size(); ++i)
    worst = std::max(worst, std::abs(prof.phi[i] - erf_profile(M, prof.s[i], 0.25)));
  CHECK(worst <= 5e-3);
  CHECK(prof.interp(1.0) == doctest::Approx(0.8427).epsilon(5e-3));
}

TEST_CASE("solve_1d: zero operator leaves the profile unchanged") {
  const auto profiles = solve_1d(
      OneDimOp::zero(), [](double s) { return 1.0 + s; }, 5.0, LeftBc::dirichlet_zero,
      RightBc::neumann_zero, 1.0, 32, {0.5});
  for (const auto& p : profiles)
    for (std::size_t i = 1; i < p.s.size(); ++i)
      CHECK(p.phi[i] == doctest::Approx(1.0 + p.s[i]).epsilon(1e-15));
}

TEST_CASE("solve_1d: zeroth-order growth against the eigenfunction closed form") {
  // phi_t = phi'' + phi with phi0 = sin(pi s / S) and Dirichlet ends:
  // the mode grows like exp((1 - (pi/S)^2) t).
  const double S = 2.0;
  const auto f = OneDimOp::linear({1.0, 0.0, 1.0, 0.0, nullptr});  // f = -phi'' - phi
  const auto profiles = solve_1d(
      f, [S](double s) { return std::sin(std::numbers::pi * s / S); }, S, LeftBc::dirichlet_zero,
      RightBc::dirichlet_value, 0.1, 200, {}, {1e3, 0.0, 0.0});
  const double rate = 1.0 - std::pow(std::numbers::pi / S, 2.0);
  const auto& prof = profiles.back();
  double worst = 0.0;
  for (std::size_t i = 0; i < prof.s.size(); ++i) {
    const double exact = std::exp(rate * 0.1) * std::sin(std::numbers::pi * prof.s[i] / S);
    worst = std::max(worst, std::abs(prof.phi[i] - exact));
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("solve_1d: odd symmetry is preserved exactly at the origin") {
  const auto f = OneDimOp::linear({1.0, 0.0, 0.0, 0.0, nullptr});
  const auto profiles = solve_1d(
      f, [](double) { return 1.0; }, 4.0, LeftBc::odd_reflection, RightBc::neumann_zero, 0.05, 64,
      {0.01, 0.02});
  for (const auto& p : profiles) CHECK(p.phi[0] == 0.0);  // bitwise
}

TEST_CASE("solve_1d: self-convergence order at least 1.9 towards the erf profile") {
  const auto f = OneDimOp::linear({1.0, 0.0, 0.0, 0.0, nullptr});
  auto err = [&](int nodes) {
    const auto prof = solve_1d(f, [](double) { return 1.0; }, 10.0, LeftBc::odd_reflection,
                               RightBc::neumann_zero, 0.25, nodes)
                          .back();
    double worst = 0.0;
    for (std::size_t i = 0; i < prof.s.size(); ++i)
      worst = std::max(worst, std::abs(prof.phi[i] - erf_profile(2.0, prof.s[i], 0.25)));
    return worst;
  };
  // Match node counts so the grids nest: h halves from 201 to 401 to 801.
  const double e1 = err(201), e2 = err(401), e3 = err(801);
  CHECK(e1 / e2 >= 3.7);
  CHECK(e2 / e3 >= 3.7);
}

TEST_CASE("solve_1d: ordered initial data stay ordered (monotone scheme)") {
  const auto& mcf = builtin_pair("graphical-mcf");
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const double bump = rng.uniform(0.1, 0.5);
    auto lo = solve_1d(mcf.f, [](double s) { return std::atan(s); }, 5.0, LeftBc::dirichlet_zero,
                       RightBc::neumann_zero, 0.1, 64);
    auto hi = solve_1d(mcf.f, [bump](double s) { return std::atan(s) + bump; }, 5.0,
                       LeftBc::dirichlet_zero, RightBc::neumann_zero, 0.1, 64);
    for (std::size_t i = 1; i < lo.back().phi.size(); ++i)
      CHECK(lo.back().phi[i] <= hi.back().phi[i] + 1e-12);
  }
}

TEST_CASE("solve_1d: diffusivity blow-up without a cap names the cap option") {
  // p = 1.5 p-Laplacian diffusivity (p-1) q^{p-2} blows up as q -> 0.
  Quasilinear1DParams params;
  params.lambda = [](double q, double) { return 0.5 * std::pow(std::max(q, 1e-300), -0.5); };
  params.diffusivity_cap = 1e300;
  const auto f = OneDimOp::quasilinear(std::move(params));
  Solve1DOptions opts;
  opts.diffusivity_cap = 1e300;  // disable the clamp
  try {
    solve_1d(f, [](double s) { return std::min(s, 1.0); }, 4.0, LeftBc::odd_reflection,
             RightBc::neumann_zero, 0.01, 64, {}, opts);
    FAIL("expected a diffusivity error");
  } catch (const error& e) {
    CHECK(std::string(e.what()).find("diffusivity_cap") != std::string::npos);
  }
  // With the default cap the same problem runs.
  Solve1DOptions capped;
  CHECK_NOTHROW(solve_1d(f, [](double s) { return std::min(s, 1.0); }, 4.0,
                         LeftBc::odd_reflection, RightBc::neumann_zero, 0.01, 64, {}, capped));
}

TEST_CASE("solve_1d: argument validation") {
  const auto f = OneDimOp::linear({});
  CHECK_THROWS_AS(solve_1d(f, [](double) { return 1.0; }, 4.0, LeftBc::odd_reflection,
                           RightBc::neumann_zero, 0.1, 8),
                  error);
  CHECK_THROWS_AS(solve_1d(f, nullptr, 4.0, LeftBc::odd_reflection, RightBc::neumann_zero, 0.1, 64),
                  error);
}

TEST_CASE("solve_1d: user dt above the CFL limit is rejected") {
  const auto f = OneDimOp::linear({1.0, 0.0, 0.0, 0.0, nullptr});
  Solve1DOptions opts;
  opts.dt_user = 1.0;  // far beyond h^2 / 2.2
  CHECK_THROWS_AS(solve_1d(f, [](double) { return 1.0; }, 4.0, LeftBc::odd_reflection,
                           RightBc::neumann_zero, 0.1, 64, {}, opts),
                  error);
}
