#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "reachbound/problem/problem_spec.h"

namespace reachbound {

/// Piecewise-constant input: value k holds on [breakpoints[k],
/// breakpoints[k+1]). Times outside the breakpoint range clamp to the first or
/// last piece.
class InputSignal {
 public:
  InputSignal() = default;
  InputSignal(std::vector<double> breakpoints,
              std::vector<Eigen::VectorXd> values);

  static InputSignal Constant(const Eigen::VectorXd& value, double t0,
                              double t1);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Eigen::VectorXd>& values() const { return values_; }
  int dim() const { return values_.empty() ? 0 : static_cast<int>(values_[0].size()); }
  int pieces() const { return static_cast<int>(values_.size()); }

  const Eigen::VectorXd& operator()(double t) const;

  /// t -> u(-t).
  InputSignal Reversed() const;
  /// t -> u(t + s).
  InputSignal Shifted(double s) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<Eigen::VectorXd> values_;
};

/// `pieces` uniform pieces on [0, T]; each value drawn uniformly from the Y
/// bounding box and rejected until h_y >= 0. Throws InputError after 10^5
/// rejected draws for one piece.
InputSignal SampleInputSignal(const ProblemSpec& spec, int pieces,
                              std::mt19937_64& rng);

/// h_y(value) >= 0 for every piece.
bool IsAdmissible(const ProblemSpec& spec, const InputSignal& signal);

/// Evaluates h_y at an input vector.
double EvaluateInputConstraint(const ProblemSpec& spec,
                               const Eigen::Ref<const Eigen::VectorXd>& u);

}  // namespace reachbound
