// Monte Carlo verification of the structure condition pairing F with f:
//   F(t, y, r, phi' e, Y) - F(t, x, v, phi' e, X) <= -2 f(t, s, phi, phi', phi'')
// over sampled admissible tuples.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mocpde/admissible_sampler.hpp"
#include "mocpde/operator_catalog.hpp"

namespace mocpde {

enum class ScSampleMode { mixed, interior, boundary };

struct ScViolation {
  std::uint64_t sample_index = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  AdmissibleTuple tuple;
};

struct SCReport {
  std::string pair_name;
  long samples = 0;
  int dim = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  GradSign grad_sign = GradSign::nonneg;
  ScSampleMode mode = ScSampleMode::mixed;

  long violation_count = 0;
  std::vector<ScViolation> violations;  // first kMaxStoredViolations kept
  double worst_slack = 0.0;             // min over samples of rhs - lhs
  std::string error_message;            // set when the sweep aborted on this pair

  static constexpr int kMaxStoredViolations = 32;
  bool passed() const { return violation_count == 0 && error_message.empty(); }
  json to_json() const;
};

// Draws `samples` tuples (jet, direction, points, matrices) with per-sample
// child seeds and records every sample with lhs > rhs + tol (1 + |rhs|).
// Violations carry the offending tuple. Mixed mode alternates interior and
// boundary tuples.
SCReport check_pair(const OperatorSpec& F, const OneDimOp& f, int n, long samples,
                    std::uint64_t seed, double tol, GradSign grad_sign = GradSign::nonneg,
                    ScSampleMode mode = ScSampleMode::mixed, const Box& box = Box{});

// Runs check_pair for every builtin pair at the given dimension; evaluation
// errors are captured per pair without aborting the sweep.
std::map<std::string, SCReport> check_all_builtin(long samples, std::uint64_t seed, double tol,
                                                  int dim = 2);

}  // namespace mocpde
