#include "reachbound/verify/simulate.h"

#include <cmath>

#include "reachbound/common/errors.h"

namespace reachbound {

VectorField::VectorField(const ProblemSpec& spec)
    : f_(spec.f), n_(spec.n), m_(spec.m), point_(Eigen::VectorXd::Zero(spec.num_vars())) {}

Eigen::VectorXd VectorField::operator()(const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& u) const {
  point_.head(n_) = x;
  if (m_ > 0) point_.segment(n_, m_) = u;
  Eigen::VectorXd out(n_);
  const std::span<const double> p(point_.data(), point_.size());
  for (int i = 0; i < n_; ++i) out[i] = f_[i].Evaluate(p);
  return out;
}

Trajectory Rk4Integrate(const ProblemSpec& spec, const Eigen::VectorXd& x0,
                        const InputSignal& input, double t_sim, int steps, double t0,
                        bool record_path) {
  if (steps < 1) throw InputError("integration needs at least one step");
  if (x0.size() != spec.n) throw InputError("initial state has the wrong dimension");
  const VectorField field(spec);
  const double h = t_sim / steps;
  Trajectory tr;
  tr.times.push_back(t0);
  tr.states.push_back(x0);
  Eigen::VectorXd x = x0;
  const Eigen::VectorXd no_input(0);
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * h;
    const Eigen::VectorXd& u = spec.m > 0 ? input(t + 0.5 * h) : no_input;
    const Eigen::VectorXd k1 = field(x, u);
    const Eigen::VectorXd k2 = field(x + 0.5 * h * k1, u);
    const Eigen::VectorXd k3 = field(x + 0.5 * h * k2, u);
    const Eigen::VectorXd k4 = field(x + h * k3, u);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite()) {
      throw DivergenceError("trajectory diverged at t = " + std::to_string(t + h), t + h);
    }
    if (record_path || k + 1 == steps) {
      tr.times.push_back(t0 + (k + 1) * h);
      tr.states.push_back(x);
    }
  }
  return tr;
}

Eigen::VectorXd FlowEndpoint(const ProblemSpec& spec, const Eigen::VectorXd& x0,
                             const InputSignal& input, double t_sim, int steps_per_unit) {
  if (t_sim == 0.0) return x0;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t_sim) * steps_per_unit - 1e-9)));
  return Rk4Integrate(spec, x0, input, t_sim, steps, 0.0, false).final_state();
}

std::mt19937_64 SampleRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

namespace {

constexpr double kGridStep = 1.0 / kStepsPerTimeUnit;
constexpr int kMaxRedraws = 100;

double Error(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

}  // namespace

FlowIdentityReport CheckFlowIdentities(const ProblemSpec& spec, int samples,
                                       std::uint64_t seed, double tolerance) {
  FlowIdentityReport rep;
  rep.samples = samples;
  rep.tolerance = tolerance;
  rep.seed = seed;
  const ProblemSpec reversed = NegateField(spec);
  const int grid_steps = static_cast<int>(std::lround(spec.T / kGridStep));
  ProblemSpec horizon = spec;
  horizon.T = std::max(spec.T, kGridStep);
  auto flow = [](const ProblemSpec& p, const Eigen::VectorXd& x, const InputSignal& u,
                 double t, int steps) -> Eigen::VectorXd {
    return steps ? Rk4Integrate(p, x, u, t, steps, 0.0, false).final_state() : x;
  };
  for (int k = 0; k < samples; ++k) {
    std::mt19937_64 rng = SampleRng(seed, 1, k);
    bool done = false;
    for (int attempt = 0; attempt < kMaxRedraws && !done; ++attempt) {
      Eigen::VectorXd x0(spec.n);
      for (int i = 0; i < spec.n; ++i) {
        x0[i] = std::uniform_real_distribution<double>(spec.omega[i].lo, spec.omega[i].hi)(rng);
      }
      const int total = std::uniform_int_distribution<int>(0, grid_steps)(rng);
      const int ns = std::uniform_int_distribution<int>(0, total)(rng);
      const int nt = total - ns;
      const InputSignal u = spec.m > 0 ? SampleInputSignal(horizon, 10, rng) : InputSignal();
      const double t = nt * kGridStep, s = ns * kGridStep;
      const auto shifted = [&](const InputSignal& v, double by) {
        return spec.m > 0 ? v.Shifted(by) : v;
      };
      const InputSignal reversed_u = spec.m > 0 ? u.Reversed() : u;
      try {
        const Eigen::VectorXd forward = flow(spec, x0, u, t, nt);
        const Eigen::VectorXd backward = flow(reversed, x0, reversed_u, -t, nt);
        // Flowing -f forward under u(t - .) undoes the forward flow.
        const Eigen::VectorXd undone = flow(reversed, forward, shifted(reversed_u, -t), t, nt);
        const Eigen::VectorXd whole = flow(spec, x0, u, t + s, nt + ns);
        const Eigen::VectorXd first = flow(spec, x0, u, s, ns);
        const Eigen::VectorXd second = flow(spec, first, shifted(u, s), t, nt);
        const double ea = std::max(Error(backward, forward), Error(undone, x0));
        const double eb = Error(second, whole);
        rep.max_reversal_error = std::max(rep.max_reversal_error, ea);
        rep.max_semigroup_error = std::max(rep.max_semigroup_error, eb);
        if (!(ea <= tolerance)) ++rep.reversal_failures;
        if (!(eb <= tolerance)) ++rep.semigroup_failures;
        done = true;
      } catch (const DivergenceError&) {
        ++rep.redrawn;
      }
    }
    if (!done) ++rep.diverged;
  }
  return rep;
}

nlohmann::json ToJson(const FlowIdentityReport& r) {
  return {{"samples", r.samples},
          {"tolerance", r.tolerance},
          {"max_reversal_error", r.max_reversal_error},
          {"max_semigroup_error", r.max_semigroup_error},
          {"reversal_failures", r.reversal_failures},
          {"semigroup_failures", r.semigroup_failures},
          {"redrawn", r.redrawn},
          {"diverged", r.diverged},
          {"seed", r.seed},
          {"passed", r.passed()}};
}

}  // namespace reachbound
