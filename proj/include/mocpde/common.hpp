// Shared infrastructure: error type, deterministic RNG, sampling boxes.
#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace mocpde {

enum class errc {
  invalid_argument,
  dimension_mismatch,
  not_symmetric,
  domain,
  cfl_violation,
  numerics,
  config,
  hypothesis_failed,
  io,
};

// All library errors carry a category so callers can branch without parsing
// messages.
class error : public std::runtime_error {
public:
  error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

// splitmix64 stream. Small, fast, and identical on every platform, which is
// what the byte-identical-report contract needs (std:: distributions are not
// portable across standard libraries).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1) with 53 random bits
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // inclusive bounds
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double normal();

  // Seed-splitting rule used by every parallelizable loop: child k of seed s
  // is s XOR (k+1) * golden-ratio constant, passed through one splitmix64
  // scramble. Results are independent of how work is distributed.
  static std::uint64_t child_seed(std::uint64_t seed, std::uint64_t task_index);

private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Axis-aligned box used to sample spatial points and coefficient arguments.
struct Box {
  Eigen::VectorXd lo, hi;

  static Box centered(int n, double half_width);
  int dim() const { return static_cast<int>(lo.size()); }
  Eigen::VectorXd sample(Rng& rng) const;
};

// Default coefficient-sampling box, [-pi, pi]^n.
inline Box default_sample_box(int n) { return Box::centered(n, std::numbers::pi); }

}  // namespace mocpde
