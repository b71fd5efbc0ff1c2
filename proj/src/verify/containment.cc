#include "reachbound/verify/containment.h"

#include <cmath>
#include <limits>

#include "common/grid.h"
#include "reachbound/common/eigen_span.h"
#include "reachbound/common/errors.h"
#include "reachbound/problem/input_signal.h"
#include "reachbound/sdpsolve/certificate.h"
#include "verify/parallel.h"

namespace reachbound {

std::string ToString(SampleOutcome o) {
  switch (o) {
    case SampleOutcome::kPass: return "pass";
    case SampleOutcome::kViolation: return "violation";
    case SampleOutcome::kUnconfirmed: return "unconfirmed";
    case SampleOutcome::kLeftRegion: return "left_region";
    case SampleOutcome::kDiverged: return "diverged";
  }
  return "unknown";
}

namespace {

constexpr std::uint64_t kStreamOuter = 2;
constexpr std::uint64_t kStreamAcceptance = 3;
constexpr std::uint64_t kStreamInner = 4;
constexpr int kAcceptanceDraws = 20000;
constexpr double kMinAcceptance = 1e-3;
constexpr int kMaxRejections = 1000000;

class StateEvaluator {
 public:
  explicit StateEvaluator(const ProblemSpec& spec)
      : n_(spec.n), point_(Eigen::VectorXd::Zero(spec.num_vars())) {}
  double operator()(const Polynomial& p, const Eigen::VectorXd& x) {
    point_.head(n_) = x;
    return p.Evaluate(AsSpan(point_));
  }

 private:
  int n_;
  Eigen::VectorXd point_;
};

Eigen::VectorXd DrawOmega(const ProblemSpec& spec, std::mt19937_64& rng) {
  Eigen::VectorXd x(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    x[i] = std::uniform_real_distribution<double>(spec.omega[i].lo, spec.omega[i].hi)(rng);
  }
  return x;
}

bool InTarget(const ProblemSpec& spec, StateEvaluator& eval, const Eigen::VectorXd& x) {
  return eval(spec.g, x) <= 1.0 && eval(spec.h_x, x) >= 0.0;
}

std::vector<InputSignal> CornerInputs(const ProblemSpec& spec) {
  std::vector<InputSignal> out;
  const int corners = 1 << spec.m;
  for (int mask = 0; mask < corners; ++mask) {
    Eigen::VectorXd u(spec.m);
    for (int j = 0; j < spec.m; ++j) {
      u[j] = (mask >> j) & 1 ? spec.y_bounding_box[j].hi : spec.y_bounding_box[j].lo;
    }
    if (EvaluateInputConstraint(spec, u) >= 0.0) out.push_back(InputSignal::Constant(u, 0.0, spec.T));
  }
  return out;
}

void Summarize(ContainmentTally& tally) {
  tally.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : tally.log) {
    switch (s.outcome) {
      case SampleOutcome::kViolation: ++tally.violations; break;
      case SampleOutcome::kUnconfirmed: ++tally.unconfirmed; break;
      case SampleOutcome::kLeftRegion: ++tally.left_region; continue;
      case SampleOutcome::kDiverged: ++tally.diverged; continue;
      case SampleOutcome::kPass: break;
    }
    ++tally.checked;
    tally.worst_margin = std::min(tally.worst_margin, s.margin);
  }
  if (tally.checked == 0) tally.worst_margin = 0.0;
}

}  // namespace

std::vector<Eigen::VectorXd> SublevelGridPoints(const ProblemSpec& spec, const Polynomial& v,
                                                double level, int count) {
  if (count <= 0) return {};
  StateEvaluator eval(spec);
  auto collect = [&](const std::vector<Interval>& box, int per_axis) {
    std::vector<std::vector<double>> axes;
    for (int i = 0; i < spec.n; ++i) axes.push_back(Linspace(box[i].lo, box[i].hi, per_axis));
    std::vector<Eigen::VectorXd> hits;
    ForEachProduct(axes, [&](const Eigen::VectorXd& x) {
      if (eval(spec.h_x, x) >= 0.0 && eval(v, x) <= level) hits.push_back(x);
    });
    return hits;
  };
  const std::vector<Interval> region = StateRegionBox(spec);
  constexpr int kCoarse = 41;
  const auto coarse = collect(region, kCoarse);
  if (coarse.empty()) return {};

  // Tighten the box around the coarse hits, padded by one coarse cell.
  std::vector<Interval> box = region;
  for (int i = 0; i < spec.n; ++i) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& x : coarse) {
      lo = std::min(lo, x[i]);
      hi = std::max(hi, x[i]);
    }
    const double cell = (region[i].hi - region[i].lo) / (kCoarse - 1);
    box[i] = {std::max(region[i].lo, lo - cell), std::min(region[i].hi, hi + cell)};
  }
  int per_axis = std::max(2, static_cast<int>(std::ceil(std::pow(2.0 * count, 1.0 / spec.n))));
  std::vector<Eigen::VectorXd> hits = collect(box, per_axis);
  while (static_cast<int>(hits.size()) < count && std::pow(per_axis, spec.n) < 4e6) {
    per_axis = 2 * per_axis - 1;
    hits = collect(box, per_axis);
  }
  if (static_cast<int>(hits.size()) <= count) return hits;
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < count; ++i) out.push_back(hits[static_cast<size_t>(i) * hits.size() / count]);
  return out;
}

ContainmentReport CheckContainment(const ProblemSpec& spec, const Polynomial& lower,
                                   const Polynomial& upper, const ContainmentOptions& opt) {
  if (opt.outer_samples < 0 || opt.inner_samples < 0 || opt.pieces < 1) {
    throw InputError("sample counts must be non-negative and pieces positive");
  }
  ContainmentReport rep;
  rep.tolerance = opt.tolerance;
  rep.seed = opt.seed;
  rep.inner_exact = spec.m == 0;
  rep.inner_requested = opt.inner_samples;

  {
    StateEvaluator eval(spec);
    std::mt19937_64 rng = SampleRng(opt.seed, kStreamAcceptance, 0);
    int accepted = 0;
    for (int k = 0; k < kAcceptanceDraws; ++k) accepted += InTarget(spec, eval, DrawOmega(spec, rng));
    rep.acceptance_rate = static_cast<double>(accepted) / kAcceptanceDraws;
  }
  if (opt.outer_samples > 0 && rep.acceptance_rate < kMinAcceptance) {
    throw InputError("X_0 = {g <= 1} covers " + std::to_string(100.0 * rep.acceptance_rate) +
                     "% of the omega box; choose an omega that encloses the target set more tightly");
  }

  const ProblemSpec reversed = NegateField(spec);
  rep.outer.log.resize(opt.outer_samples);
  ParallelFor(opt.outer_samples, opt.threads, [&](int i) {
    StateEvaluator eval(spec);
    std::mt19937_64 rng = SampleRng(opt.seed, kStreamOuter, i);
    ContainmentSample& s = rep.outer.log[i];
    int tries = 0;
    do {
      if (++tries > kMaxRejections) throw InputError("rejection sampling of X_0 failed");
      s.start = DrawOmega(spec, rng);
    } while (!InTarget(spec, eval, s.start));
    const InputSignal u = spec.m > 0 ? SampleInputSignal(spec, opt.pieces, rng) : InputSignal();
    try {
      s.end = FlowEndpoint(reversed, s.start, u, spec.T, opt.steps_per_unit);
    } catch (const DivergenceError&) {
      s.outcome = SampleOutcome::kDiverged;
      return;
    }
    if (eval(spec.h_x, s.end) < 0.0) {
      s.outcome = SampleOutcome::kLeftRegion;
      return;
    }
    s.margin = 1.0 - eval(lower, s.end);
    s.outcome = s.margin >= -opt.tolerance ? SampleOutcome::kPass : SampleOutcome::kViolation;
  });

  const auto points = SublevelGridPoints(spec, upper, 1.0 - opt.tolerance, opt.inner_samples);
  const auto corners = spec.m > 0 ? CornerInputs(spec) : std::vector<InputSignal>{InputSignal()};
  rep.inner.log.resize(points.size());
  ParallelFor(static_cast<int>(points.size()), opt.threads, [&](int i) {
    StateEvaluator eval(spec);
    std::mt19937_64 rng = SampleRng(opt.seed, kStreamInner, i);
    ContainmentSample& s = rep.inner.log[i];
    s.start = points[i];
    s.margin = -std::numeric_limits<double>::infinity();
    bool any_finite = false, any_inside = false;
    const int tries = static_cast<int>(corners.size()) + (spec.m > 0 ? opt.inner_inputs : 0);
    const int steps = std::max(1, static_cast<int>(std::ceil(spec.T * opt.steps_per_unit - 1e-9)));
    for (int k = 0; k < tries && s.margin < -opt.tolerance; ++k) {
      const InputSignal u = k < static_cast<int>(corners.size())
                                ? corners[k]
                                : SampleInputSignal(spec, opt.pieces, rng);
      Trajectory path;
      try {
        path = spec.T > 0.0 ? Rk4Integrate(spec, s.start, u, spec.T, steps)
                            : Trajectory{{0.0}, {s.start}};
      } catch (const DivergenceError&) {
        continue;
      }
      any_finite = true;
      bool inside = true;
      for (const auto& x : path.states) inside = inside && eval(spec.h_x, x) >= 0.0;
      if (!inside) continue;
      any_inside = true;
      const double margin = 1.0 - eval(spec.g, path.final_state());
      if (margin > s.margin) {
        s.margin = margin;
        s.end = path.final_state();
      }
    }
    if (!any_finite) {
      s.outcome = SampleOutcome::kDiverged;
    } else if (!any_inside) {
      s.outcome = SampleOutcome::kLeftRegion;
    } else if (s.margin >= -opt.tolerance) {
      s.outcome = SampleOutcome::kPass;
    } else {
      s.outcome = spec.m == 0 ? SampleOutcome::kViolation : SampleOutcome::kUnconfirmed;
    }
  });
  Summarize(rep.outer);
  Summarize(rep.inner);
  return rep;
}

ContainmentReport CheckContainment(const ValueCertificate& cert, const ContainmentOptions& options) {
  return CheckContainment(cert.spec, cert.lower(), cert.upper(), options);
}

namespace {

nlohmann::json Vec(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

nlohmann::json TallyJson(const ContainmentTally& t, bool with_log) {
  nlohmann::json j{{"checked", t.checked},
                   {"violations", t.violations},
                   {"unconfirmed", t.unconfirmed},
                   {"left_region", t.left_region},
                   {"diverged", t.diverged},
                   {"worst_margin", t.worst_margin}};
  if (with_log) {
    nlohmann::json log = nlohmann::json::array();
    for (const auto& s : t.log) {
      log.push_back({{"start", Vec(s.start)},
                     {"end", Vec(s.end)},
                     {"margin", std::isfinite(s.margin) ? nlohmann::json(s.margin) : nlohmann::json()},
                     {"outcome", ToString(s.outcome)}});
    }
    j["samples"] = std::move(log);
  }
  return j;
}

}  // namespace

nlohmann::json ToJson(const ContainmentReport& r, bool with_log) {
  return {{"tolerance", r.tolerance},
          {"seed", r.seed},
          {"acceptance_rate", r.acceptance_rate},
          {"inner_exact", r.inner_exact},
          {"inner_requested", r.inner_requested},
          {"outer", TallyJson(r.outer, with_log)},
          {"inner", TallyJson(r.inner, with_log)},
          {"passed", r.passed()}};
}

}  // namespace reachbound
