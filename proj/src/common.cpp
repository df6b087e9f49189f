#include "mocpde/common.hpp"

#include <cmath>

namespace mocpde {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 nudged away from 0 so log stays finite.
  double u1 = uniform01();
  double u2 = uniform01();
  if (u1 < 1e-300) u1 = 1e-300;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::child_seed(std::uint64_t seed, std::uint64_t task_index) {
  std::uint64_t z = seed ^ ((task_index + 1) * 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Box Box::centered(int n, double half_width) {
  if (n < 1) fail(errc::invalid_argument, "Box::centered: dimension must be >= 1");
  Box b;
  b.lo = Eigen::VectorXd::Constant(n, -half_width);
  b.hi = Eigen::VectorXd::Constant(n, half_width);
  return b;
}

Eigen::VectorXd Box::sample(Rng& rng) const {
  Eigen::VectorXd x(dim());
  for (int i = 0; i < dim(); ++i) x[i] = rng.uniform(lo[i], hi[i]);
  return x;
}

}  // namespace mocpde
