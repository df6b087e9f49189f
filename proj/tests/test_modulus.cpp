#include <doctest.h>

#include <cmath>

#include "mocpde/modulus.hpp"

using namespace mocpde;

namespace {

GridField sin_field(int nodes) {
  GridField f = make_grid(1, {2.0 * std::numbers::pi, 0.0}, {nodes, 1}, BoundaryMode::periodic);
  for (int i = 0; i < nodes; ++i) f.at(i) = std::sin(f.coord(0, i));
  return f;
}

}  // namespace

TEST_CASE("compute_moc: sine field reproduces sin(s) (trig identity oracle)") {
  // sin x - sin y = 2 cos((x+y)/2) sin((x-y)/2): the sup at half-distance s
  // is sin(s) for s <= pi/2.
  const GridField f = sin_field(512);
  const double h = f.spacing(0);
  const auto curve = compute_moc(f, 64);
  CHECK(curve.s_max == doctest::Approx(std::numbers::pi / 2.0));
  for (double s : {0.5, 1.0}) {
    const double ds = curve.s_max / curve.bins;
    const int k = std::min(curve.bins - 1, static_cast<int>(s / ds));
    CHECK(std::abs(curve.omega[k] - std::sin(curve.s_values[k])) <= 2.0 * h);
  }
}

TEST_CASE("compute_moc: constant and square-wave fields") {
  GridField c = sin_field(128);
  for (auto& v : c.values) v = 1.23;
  const auto curve = compute_moc(c, 32);
  for (int k = 0; k < curve.bins; ++k)
    if (curve.occupancy[k] > 0) CHECK(curve.omega[k] == 0.0);

  GridField sq = sin_field(128);
  const double M = 2.0;
  for (int i = 0; i < 128; ++i) sq.at(i) = i < 64 ? 0.5 * M : -0.5 * M;
  const auto sq_curve = compute_moc(sq, 32);
  // A jump pair exists at every torus distance.
  for (int k = 0; k < sq_curve.bins; ++k)
    if (sq_curve.occupancy[k] > 0) CHECK(sq_curve.omega[k] == doctest::Approx(0.5 * M));
}

TEST_CASE("compute_moc: bounded by half the oscillation and nonnegative") {
  Rng rng(5);
  GridField f = make_grid(2, {2.0 * std::numbers::pi, 2.0 * std::numbers::pi}, {24, 24},
                          BoundaryMode::periodic);
  for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
  const auto curve = compute_moc(f, 24);
  const double half_osc = 0.5 * field_osc(f);
  for (int k = 0; k < curve.bins; ++k) {
    if (curve.occupancy[k] == 0) continue;
    CHECK(curve.omega[k] >= -1e-12);
    CHECK(curve.omega[k] <= half_osc + 1e-12);
  }
}

TEST_CASE("compute_moc: torus shift invariance (same pair set)") {
  Rng rng(9);
  GridField f = sin_field(96);
  for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
  const auto base = compute_moc(f, 32);
  GridField shifted = f;
  const int shift = 17;
  for (int i = 0; i < 96; ++i) shifted.at(i) = f.at((i + shift) % 96);
  const auto moved = compute_moc(shifted, 32);
  for (int k = 0; k < base.bins; ++k) {
    CHECK(base.occupancy[k] == moved.occupancy[k]);
    CHECK(base.omega[k] == moved.omega[k]);  // exact: identical pair values
  }
}

TEST_CASE("compute_moc: refinement moves omega by at most Lipschitz * h on smooth data") {
  const auto coarse = compute_moc(sin_field(128), 32);
  const auto fine = compute_moc(sin_field(256), 32);
  const double h = 2.0 * std::numbers::pi / 128.0;
  for (int k = 0; k < 32; ++k) {
    if (coarse.occupancy[k] == 0 || fine.occupancy[k] == 0) continue;
    CHECK(std::abs(coarse.omega[k] - fine.omega[k]) <= 1.0 * h + 1e-12);
  }
}

TEST_CASE("compute_moc: 2D grids above 96 nodes per axis are strided") {
  GridField big = make_grid(2, {2.0 * std::numbers::pi, 2.0 * std::numbers::pi}, {128, 128},
                            BoundaryMode::periodic);
  for (int i = 0; i < 128; ++i)
    for (int j = 0; j < 128; ++j) big.at(i, j) = std::sin(big.coord(0, i));
  const auto curve = compute_moc(big, 32);
  CHECK(curve.stride == 2);
  const auto small = compute_moc(sin_field(64), 32);
  CHECK(small.stride == 1);
}

TEST_CASE("compute_moc: input validation") {
  CHECK_THROWS_AS(compute_moc(sin_field(64), 1), error);
}

TEST_CASE("is_bounded_by: sine curve against linear and half-linear profiles") {
  const auto curve = compute_moc(sin_field(512), 64);

  const auto ok = is_bounded_by(curve, [](double s) { return s; }, 1e-9);
  CHECK(ok.ok);  // sin s <= s

  const auto bad = is_bounded_by(curve, [](double s) { return 0.5 * s; }, 1e-9);
  CHECK(!bad.ok);  // sin 1 = 0.84 > 0.5
  CHECK(bad.worst_excess > 0.25);
  CHECK(bad.worst_s > 0.5);

  GridField c = sin_field(64);
  for (auto& v : c.values) v = 0.0;
  const auto flat = is_bounded_by(compute_moc(c, 16), [](double) { return 0.0; }, 1e-12);
  CHECK(flat.ok);
}

TEST_CASE("is_bounded_by: thin bins are reported, not asserted") {
  GridField f = make_grid(2, {1.0, 1.0}, {8, 8}, BoundaryMode::neumann);
  Rng rng(3);
  for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
  const auto curve = compute_moc(f, 24);
  const auto rep = is_bounded_by(curve, [](double) { return 100.0; }, 1e-9, 8);
  CHECK(rep.ok);
  CHECK(rep.bins_skipped_thin > 0);  // corner-distance bins hold few pairs
}
