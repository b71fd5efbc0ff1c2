#include "reachbound/problem/input_signal.h"

#include <algorithm>

#include "reachbound/common/eigen_span.h"
#include "reachbound/common/errors.h"

namespace reachbound {

InputSignal::InputSignal(std::vector<double> breakpoints,
                         std::vector<Eigen::VectorXd> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty() || breakpoints_.size() != values_.size() + 1) {
    throw InputError("input signal needs k values and k + 1 breakpoints");
  }
  for (size_t k = 0; k + 1 < breakpoints_.size(); ++k) {
    if (!(breakpoints_[k] < breakpoints_[k + 1])) {
      throw InputError("input signal breakpoints must be increasing");
    }
  }
  for (const auto& v : values_) {
    if (v.size() != values_[0].size()) {
      throw InputError("input signal values differ in dimension");
    }
  }
}

InputSignal InputSignal::Constant(const Eigen::VectorXd& value, double t0,
                                  double t1) {
  return InputSignal({t0, t1}, {value});
}

const Eigen::VectorXd& InputSignal::operator()(double t) const {
  auto it = std::upper_bound(breakpoints_.begin() + 1, breakpoints_.end() - 1, t);
  return values_[static_cast<size_t>(it - (breakpoints_.begin() + 1))];
}

InputSignal InputSignal::Reversed() const {
  std::vector<double> b(breakpoints_.rbegin(), breakpoints_.rend());
  for (double& x : b) x = -x;
  std::vector<Eigen::VectorXd> v(values_.rbegin(), values_.rend());
  return InputSignal(std::move(b), std::move(v));
}

InputSignal InputSignal::Shifted(double s) const {
  std::vector<double> b = breakpoints_;
  for (double& x : b) x -= s;
  return InputSignal(std::move(b), values_);
}

double EvaluateInputConstraint(const ProblemSpec& spec,
                               const Eigen::Ref<const Eigen::VectorXd>& u) {
  const Eigen::VectorXd p =
      spec.AmbientPoint(Eigen::VectorXd::Zero(spec.n), u, 0.0);
  return spec.h_y.Evaluate(AsSpan(p));
}

InputSignal SampleInputSignal(const ProblemSpec& spec, int pieces,
                              std::mt19937_64& rng) {
  if (pieces < 1) throw InputError("input signal needs at least one piece");
  constexpr int kMaxDraws = 100000;
  std::vector<double> breakpoints(pieces + 1);
  for (int k = 0; k <= pieces; ++k) breakpoints[k] = spec.T * k / pieces;
  breakpoints[pieces] = spec.T;
  std::vector<Eigen::VectorXd> values;
  values.reserve(pieces);
  for (int k = 0; k < pieces; ++k) {
    Eigen::VectorXd u(spec.m);
    bool accepted = spec.m == 0;
    for (int draw = 0; draw < kMaxDraws && !accepted; ++draw) {
      for (int j = 0; j < spec.m; ++j) {
        const auto& iv = spec.y_bounding_box[j];
        u[j] = iv.lo == iv.hi
                   ? iv.lo
                   : std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
      }
      accepted = EvaluateInputConstraint(spec, u) >= 0.0;
    }
    if (!accepted) {
      throw InputError("input rejection sampling failed after 100000 draws; "
                       "Y = {hY >= 0} may be empty or too thin for its bounding box");
    }
    values.push_back(std::move(u));
  }
  return InputSignal(std::move(breakpoints), std::move(values));
}

bool IsAdmissible(const ProblemSpec& spec, const InputSignal& signal) {
  return std::all_of(signal.values().begin(), signal.values().end(),
                     [&](const Eigen::VectorXd& u) {
                       return EvaluateInputConstraint(spec, u) >= 0.0;
                     });
}

}  // namespace reachbound
