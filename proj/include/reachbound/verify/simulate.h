#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "reachbound/problem/input_signal.h"
#include "reachbound/problem/problem_spec.h"

namespace reachbound {

/// Default integration resolution.
inline constexpr int kStepsPerTimeUnit = 1000;

/// f(x, u) with the polynomials of a spec.
class VectorField {
 public:
  explicit VectorField(const ProblemSpec& spec);
  int n() const { return n_; }
  int m() const { return m_; }
  Eigen::VectorXd operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;

 private:
  std::vector<Polynomial> f_;
  int n_;
  int m_;
  mutable Eigen::VectorXd point_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  const Eigen::VectorXd& final_state() const { return states.back(); }
};

/// Classical RK4 from time t0 over a signed horizon t_sim in `steps` uniform
/// steps. The input is frozen within each step at its midpoint value. With
/// record_path false only the endpoints are kept. Throws DivergenceError on a
/// non-finite state.
Trajectory Rk4Integrate(const ProblemSpec& spec, const Eigen::VectorXd& x0,
                        const InputSignal& input, double t_sim, int steps,
                        double t0 = 0.0, bool record_path = true);

/// Endpoint after t_sim with steps = ceil(|t_sim| * steps_per_unit).
Eigen::VectorXd FlowEndpoint(const ProblemSpec& spec, const Eigen::VectorXd& x0,
                             const InputSignal& input, double t_sim,
                             int steps_per_unit = kStepsPerTimeUnit);

/// Deterministic generator for sample `index` of stream `stream`.
std::mt19937_64 SampleRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

struct FlowIdentityReport {
  int samples{0};
  double tolerance{0.0};
  double max_reversal_error{0.0};
  double max_semigroup_error{0.0};
  int reversal_failures{0};
  int semigroup_failures{0};
  /// Draws replaced because a trajectory blew up.
  int redrawn{0};
  /// Samples without an integrable draw.
  int diverged{0};
  std::uint64_t seed{0};
  bool passed() const { return reversal_failures == 0 && semigroup_failures == 0 && diverged == 0; }
};

/// Randomized checks of the two flow identities on x0 in omega, t, s >= 0
/// with t + s <= T on the step grid and piecewise-constant inputs:
///   reversal:  integrating -f over -t under u(-.) equals integrating f over t,
///              and integrating -f over t under u(t - .) returns to x0,
///   semigroup: the flow over t + s equals the flow over t started from the
///              flow over s, under the input shifted by s.
/// Errors are measured as |difference| / max(1, |endpoint|). Draws whose
/// trajectories blow up are redrawn, up to 100 times per sample.
FlowIdentityReport CheckFlowIdentities(const ProblemSpec& spec, int samples,
                                       std::uint64_t seed, double tolerance = 1e-6);

nlohmann::json ToJson(const FlowIdentityReport& r);

}  // namespace reachbound
