#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reachbound/sdpsolve/sdp_instance.h"

namespace reachbound {

enum class SolveStatus { kOptimal, kInfeasibleSuspected, kMaxIterations, kNumericalFailure };

std::string ToString(SolveStatus status);

struct SolverOptions {
  int max_iters{200};
  double tol_gap{1e-8};
  double tol_feas{1e-8};
  /// Multiplies the default starting point X = xi I, Z = eta I.
  double initial_scale{1.0};
  bool verbose{false};
};

/// Acceptance thresholds for an optimal status.
inline constexpr double kAcceptPrimalResidual = 1e-7;
inline constexpr double kAcceptDualResidual = 1e-7;
inline constexpr double kAcceptGap = 1e-6;
inline constexpr double kAcceptMinEigenvalue = -1e-8;

struct SolverDiagnostics {
  /// max_i |b_i - <A_i, X> - F_i w|.
  double primal_residual{0.0};
  /// (||C - A*(y) - Z||_F + ||c_f - F^T y||) / (1 + ||C||_F + ||c_f||).
  double dual_residual{0.0};
  /// |primal - dual| / (1 + |primal|).
  double gap{0.0};
  std::vector<double> min_eigenvalues;
  int iterations{0};
  int dropped_constraints{0};
};

struct SdpSolution {
  SolveStatus status{SolveStatus::kNumericalFailure};
  std::string message;
  std::vector<Eigen::MatrixXd> blocks;  ///< X
  std::vector<Eigen::MatrixXd> dual_blocks;  ///< Z
  Eigen::VectorXd free;  ///< w
  Eigen::VectorXd y;
  double primal_objective{0.0};
  double dual_objective{0.0};
  SolverDiagnostics diagnostics;
};

/// Infeasible-start primal-dual interior-point method with Nesterov-Todd
/// scaling and Mehrotra predictor-corrector steps. Free variables enter the
/// reduced KKT system directly; free columns that depend on other free
/// columns are fixed at zero, and an objective that is unbounded along them is
/// reported as infeasible-suspected. Linearly dependent rows are dropped before
/// the first iteration; an inconsistent system is reported as
/// infeasible-suspected. The best iterate is returned whatever the status.
SdpSolution Solve(const SdpInstance& instance, const SolverOptions& options = {});

}  // namespace reachbound
