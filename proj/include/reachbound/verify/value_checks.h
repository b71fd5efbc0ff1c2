#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "reachbound/polyalg/polynomial.h"
#include "reachbound/problem/problem_spec.h"
#include "reachbound/problem/trivial_certificate.h"

namespace reachbound {

struct ValueCertificate;

/// Value function of x' = x u, u in [-1, 1], g = x.
double AnalyticValue1d(double x, double t, double T);

struct SandwichReport {
  int nodes{0};
  double tolerance{0.0};
  int lower_violations{0};
  int upper_violations{0};
  /// min over the grid of V* - V_l and V_u - V*.
  double worst_lower_margin{0.0};
  double worst_upper_margin{0.0};
  Eigen::Vector2d worst_lower_point{0.0, 0.0};
  Eigen::Vector2d worst_upper_point{0.0, 0.0};
  bool passed() const { return lower_violations == 0 && upper_violations == 0; }
};

/// V_l <= V* + tol and V_u >= V* - tol on an nx-by-nt grid over omega x [0, T].
/// Requires a scalar state and one input.
SandwichReport CheckSandwich1d(const Polynomial& lower, const Polynomial& upper,
                               const ProblemSpec& spec, int nx = 101, int nt = 11,
                               double tolerance = 1e-6);
SandwichReport CheckSandwich1d(const ValueCertificate& cert, int nx = 101, int nt = 11,
                               double tolerance = 1e-6);

inline constexpr double kDissipationTolerance = 1e-7;

struct InequalityTally {
  int checked{0};
  int violations{0};
  /// Smallest signed margin; negative beyond -tolerance is a violation.
  double worst_margin{0.0};
  Eigen::VectorXd worst_point;
};

/// The four value-function inequalities on a finite point set:
///   lower_hjb:      dV_l/dt + c + grad V_l . f >= -tol
///   upper_hjb:      dV_u/dt + c + grad V_u . f <=  tol
///   lower_terminal: V_l(x, T) <= g(x) + tol
///   upper_terminal: V_u(x, T) >= g(x) - tol
struct DissipationReport {
  double tolerance{0.0};
  int points{0};
  std::map<std::string, InequalityTally> inequalities;
  int total_violations() const;
  bool passed() const { return total_violations() == 0; }
};

/// Evaluates at the given ambient points; terminal inequalities use the state
/// part of each point with t replaced by T.
DissipationReport CheckDissipationAt(const Polynomial& lower, const Polynomial& upper,
                                     const ProblemSpec& spec,
                                     const std::vector<Eigen::VectorXd>& points,
                                     double tolerance = kDissipationTolerance);

/// Default grid for dissipation checks.
inline constexpr GridCounts kDissipationGrid{21, 11, 21};

/// Uniform grid over StateRegionBox x Y box x [0, T], keeping h_x >= 0 and
/// h_y >= 0.
std::vector<Eigen::VectorXd> DissipationGridPoints(const ProblemSpec& spec,
                                                   const GridCounts& grid = kDissipationGrid);

DissipationReport CheckDissipationGrid(const Polynomial& lower, const Polynomial& upper,
                                       const ProblemSpec& spec,
                                       const GridCounts& grid = kDissipationGrid,
                                       double tolerance = kDissipationTolerance);
DissipationReport CheckDissipationGrid(const ValueCertificate& cert,
                                       const GridCounts& grid = kDissipationGrid,
                                       double tolerance = kDissipationTolerance);

nlohmann::json ToJson(const SandwichReport& r);
nlohmann::json ToJson(const DissipationReport& r);

}  // namespace reachbound
