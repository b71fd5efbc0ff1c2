#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "reachbound/polyalg/polynomial.h"
#include "reachbound/problem/problem_spec.h"

namespace reachbound {

/// Sample counts per dimension for the uniform estimation grid.
struct GridCounts {
  int x{21};
  int u{11};
  int t{11};
};

/// Grid extrema of grad(g)^T f + c over B_R x Y x [0, T]. These are grid
/// estimates of the infimum and supremum, not certified bounds.
struct AlphaEstimate {
  double alpha_lower{0.0};
  double alpha_upper{0.0};
  /// Admissible grid points in ambient coordinates.
  std::vector<Eigen::VectorXd> points;
};

/// Uniform grid on [-R, R]^n x Y-box x [0, T] keeping only ||x|| <= R and
/// h_y(u) >= 0. Throws InputError for R <= 0, counts < 2 or an empty grid.
AlphaEstimate EstimateAlphaBounds(const ProblemSpec& spec, double radius,
                                    const GridCounts& grid);

/// J_sub = g + alpha_lower (T - t) and J_super = g + alpha_upper (T - t).
std::pair<Polynomial, Polynomial> TrivialCertificates(const ProblemSpec& spec,
                                                      double alpha_lower,
                                                      double alpha_upper);

}  // namespace reachbound
