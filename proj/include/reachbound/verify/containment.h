#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "reachbound/polyalg/polynomial.h"
#include "reachbound/problem/problem_spec.h"
#include "reachbound/verify/simulate.h"

namespace reachbound {

struct ValueCertificate;

struct ContainmentOptions {
  int outer_samples{1000};
  int inner_samples{500};
  int pieces{5};
  /// Random input signals tried per inner point when m >= 1, on top of the
  /// admissible constant inputs at the Y box corners.
  int inner_inputs{8};
  double tolerance{1e-4};
  std::uint64_t seed{0};
  int steps_per_unit{kStepsPerTimeUnit};
  /// 0 picks the hardware concurrency.
  int threads{0};
};

enum class SampleOutcome { kPass, kViolation, kUnconfirmed, kLeftRegion, kDiverged };

std::string ToString(SampleOutcome o);

struct ContainmentSample {
  Eigen::VectorXd start;
  Eigen::VectorXd end;
  /// Outer: 1 - V_l(end, 0). Inner: 1 - g(end), best over tried inputs.
  double margin{0.0};
  SampleOutcome outcome{SampleOutcome::kPass};
};

struct ContainmentTally {
  int checked{0};
  int violations{0};
  int unconfirmed{0};
  int left_region{0};
  int diverged{0};
  double worst_margin{0.0};
  std::vector<ContainmentSample> log;
};

struct ContainmentReport {
  double tolerance{0.0};
  std::uint64_t seed{0};
  /// Fraction of Omega-box draws landing in X_0.
  double acceptance_rate{0.0};
  ContainmentTally outer;
  ContainmentTally inner;
  /// Inner failures are violations only without inputs.
  bool inner_exact{true};
  /// Inner points asked for; fewer are checked when {V_u(., 0) <= 1 - tol} is
  /// small or empty.
  int inner_requested{0};
  bool passed() const { return outer.violations == 0 && inner.violations == 0; }
};

/// Monte Carlo evidence for
///   outer: flowing -f for time T from X_0 = {g <= 1} under sampled inputs
///          ends in {V_l(., 0) <= 1 + tol};
///   inner: grid points of {h_x >= 0, V_u(., 0) <= 1 - tol} flow under f for
///          time T into {g <= 1 + tol} for at least one tried input.
/// Outer endpoints outside {h_x >= 0} and inner trajectories that leave
/// {h_x >= 0} under every tried input are excluded as left_region. Samples
/// run in parallel with per-index generators; the report does not depend on
/// the thread count. Throws InputError when X_0 covers less than 0.1% of the
/// Omega box.
ContainmentReport CheckContainment(const ProblemSpec& spec, const Polynomial& lower,
                                   const Polynomial& upper,
                                   const ContainmentOptions& options = {});
ContainmentReport CheckContainment(const ValueCertificate& cert,
                                   const ContainmentOptions& options = {});

/// Up to `count` grid points of {x in StateRegionBox : h_x >= 0, v(x, 0) <= level},
/// spread evenly.
std::vector<Eigen::VectorXd> SublevelGridPoints(const ProblemSpec& spec, const Polynomial& v,
                                                double level, int count);

/// Per-sample logs are included when with_log is set.
nlohmann::json ToJson(const ContainmentReport& r, bool with_log = false);

}  // namespace reachbound
