#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "reachbound/polyalg/integrate.h"
#include "reachbound/polyalg/polynomial.h"
#include "reachbound/problem/problem_spec.h"

namespace reachbound {

struct ValueCertificate;

struct Segment {
  Eigen::Vector2d a;
  Eigen::Vector2d b;
};

struct LevelSet {
  double level{1.0};
  std::vector<Segment> segments;
  /// Connected pieces of the segment graph.
  int components{0};
  /// Pieces without a loose end on the window boundary.
  int closed_components{0};
};

/// Level set of values(i, j) sampled at (xs[i], ys[j]). Saddle cells are
/// resolved with the cell-center average.
LevelSet MarchingSquares(const std::vector<double>& xs, const std::vector<double>& ys,
                         const Eigen::MatrixXd& values, double level);

struct ContourData {
  std::vector<Interval> window;
  int resolution{0};
  double level{1.0};
  std::vector<double> xs;
  std::vector<double> ys;
  /// V(x, 0) at (xs[i], ys[j]).
  Eigen::MatrixXd lower;
  Eigen::MatrixXd upper;
  LevelSet lower_set;
  LevelSet upper_set;
};

/// resolution-by-resolution grid of V_l(x, 0), V_u(x, 0) over a 2D window.
/// Throws InputError unless n = 2 and resolution >= 2.
ContourData ContourGrid(const Polynomial& lower, const Polynomial& upper,
                        const ProblemSpec& spec, double level,
                        const std::vector<Interval>& window, int resolution);
ContourData ContourGrid(const ValueCertificate& cert, double level,
                        const std::vector<Interval>& window, int resolution);

/// Rows "x1,x2,Vl,Vu", x1 fastest.
std::string ContourCsv(const ContourData& data);
nlohmann::json SegmentsJson(const ContourData& data);

struct Profile1d {
  std::vector<double> xs;
  std::vector<double> lower;
  std::vector<double> upper;
  /// Filled when the spec is the scalar x' = x u, g = x problem.
  std::vector<double> analytic;
};

/// V_l(x, 0), V_u(x, 0) along a 1D window. Throws InputError unless n = 1.
Profile1d ProfileGrid1d(const Polynomial& lower, const Polynomial& upper,
                        const ProblemSpec& spec, const Interval& window, int resolution);

/// Rows "x,Vl,Vu[,analytic]".
std::string ProfileCsv(const Profile1d& p);

/// True for x' = x u with g = x and Y = [-1, 1].
bool IsScalarBilinearExample(const ProblemSpec& spec);

/// Grid minimizer of g over omega refined by Newton steps.
Eigen::VectorXd TargetCenter(const ProblemSpec& spec);

/// Outermost r in [0, r_max] along center + r (cos a, sin a) with
/// v(., 0) <= level and h_x >= 0, where r_max is the distance to the state
/// region box. Returns 0 if no such point exists. Monotone under inclusion of
/// sublevel sets.
double RadialLevelCrossing(const Polynomial& v, const ProblemSpec& spec,
                           const Eigen::Vector2d& center, double angle, double level = 1.0);

/// Crossings on `rays` equally spaced angles starting at angle 0.
std::vector<double> RadialProfile(const Polynomial& v, const ProblemSpec& spec,
                                  const Eigen::Vector2d& center, int rays = 72,
                                  double level = 1.0);

struct NestingReport {
  int nodes{0};
  int violations{0};
  double tolerance{0.0};
  /// max over nodes with V_u <= 1 of V_l - 1.
  double worst_excess{0.0};
  bool passed() const { return violations == 0; }
};

/// V_u(x, 0) <= level implies V_l(x, 0) <= level + tol on every grid node with
/// h_x >= 0.
NestingReport CheckNesting(const ContourData& data, const ProblemSpec& spec,
                           double tolerance = 1e-6);

nlohmann::json ToJson(const NestingReport& r);

}  // namespace reachbound
