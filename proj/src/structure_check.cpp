#include "mocpde/structure_check.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mocpde {

namespace {

const char* mode_name(ScSampleMode m) {
  switch (m) {
    case ScSampleMode::mixed: return "mixed";
    case ScSampleMode::interior: return "interior";
    case ScSampleMode::boundary: return "boundary";
  }
  return "?";
}

}  // namespace

SCReport check_pair(const OperatorSpec& F, const OneDimOp& f, int n, long samples,
                    std::uint64_t seed, double tol, GradSign grad_sign, ScSampleMode mode,
                    const Box& box) {
  if (samples < 1) fail(errc::invalid_argument, "check_pair: samples >= 1 required");
  if (n < 1) fail(errc::invalid_argument, "check_pair: dimension >= 1 required");
  if (box.dim() != 0 && box.dim() != n)
    fail(errc::dimension_mismatch, "check_pair: sample box dimension mismatch");
  const Box sample_box = box.dim() == n ? box : default_sample_box(n);

  SCReport rep;
  rep.samples = samples;
  rep.dim = n;
  rep.seed = seed;
  rep.tol = tol;
  rep.grad_sign = grad_sign;
  rep.mode = mode;
  rep.worst_slack = std::numeric_limits<double>::infinity();

  JetFamilyOptions jet_opts;
  jet_opts.grad_sign = grad_sign;

  for (long k = 0; k < samples; ++k) {
    // Two child streams per sample: jet draw and tuple draw. Independent of
    // any parallel work distribution.
    Rng jet_rng(Rng::child_seed(seed, 2 * static_cast<std::uint64_t>(k)));
    const Jet1D jet = sample_jet(jet_rng, jet_opts);
    const SampleMode tuple_mode =
        mode == ScSampleMode::interior
            ? SampleMode::interior
            : (mode == ScSampleMode::boundary
                   ? SampleMode::boundary
                   : (k % 2 == 0 ? SampleMode::interior : SampleMode::boundary));
    AdmissibleTuple tuple = sample_admissible(
        jet, n, Rng::child_seed(seed, 2 * static_cast<std::uint64_t>(k) + 1), tuple_mode,
        sample_box);

    double lhs, rhs;
    try {
      const Eigen::VectorXd p = jet.dphi * tuple.e;
      lhs = eval_F(F, jet.t, tuple.y, tuple.r, p, tuple.Y) -
            eval_F(F, jet.t, tuple.x, tuple.v, p, tuple.X);
      rhs = -2.0 * eval_f(f, jet);
    } catch (const error& e) {
      std::ostringstream os;
      os << e.what() << " [sample " << k << ", tuple: " << tuple.to_json().dump() << "]";
      throw error(e.code(), os.str());
    }

    rep.worst_slack = std::min(rep.worst_slack, rhs - lhs);
    if (lhs > rhs + tol * (1.0 + std::abs(rhs))) {
      ++rep.violation_count;
      if (static_cast<int>(rep.violations.size()) < SCReport::kMaxStoredViolations)
        rep.violations.push_back({static_cast<std::uint64_t>(k), lhs, rhs, tuple});
    }
  }
  return rep;
}

std::map<std::string, SCReport> check_all_builtin(long samples, std::uint64_t seed, double tol,
                                                  int dim) {
  if (samples < 1) fail(errc::invalid_argument, "check_all_builtin: samples >= 1 required");
  std::map<std::string, SCReport> out;
  std::uint64_t pair_index = 0;
  for (const auto& pair : builtin_pairs()) {
    SCReport rep;
    try {
      rep = check_pair(pair.F, pair.f, dim, samples, Rng::child_seed(seed, pair_index), tol);
    } catch (const error& e) {
      rep.error_message = e.what();
      rep.samples = samples;
      rep.dim = dim;
      rep.tol = tol;
    }
    rep.pair_name = pair.name;
    out.emplace(pair.name, std::move(rep));
    ++pair_index;
  }
  return out;
}

json SCReport::to_json() const {
  json viols = json::array();
  for (const auto& v : violations)
    viols.push_back({{"sample", v.sample_index}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"tuple", v.tuple.to_json()}});
  return {
      {"pair", pair_name},
      {"samples", samples},
      {"dim", dim},
      {"seed", seed},
      {"tol", tol},
      {"grad_sign", grad_sign == GradSign::nonneg ? "nonneg" : "any"},
      {"mode", mode_name(mode)},
      {"violation_count", violation_count},
      {"violations_stored", viols},
      {"worst_slack", worst_slack},
      {"error", error_message},
      {"pass", passed()},
  };
}

}  // namespace mocpde
