#include "reachbound/problem/trivial_certificate.h"

#include <algorithm>
#include <limits>

#include "common/grid.h"
#include "reachbound/common/eigen_span.h"
#include "reachbound/common/errors.h"
#include "reachbound/problem/input_signal.h"

namespace reachbound {

AlphaEstimate EstimateAlphaBounds(const ProblemSpec& spec, double radius,
                                  const GridCounts& grid) {
  if (!(radius > 0.0)) throw InputError("ball radius must be positive");
  if (grid.x < 2 || grid.t < 2 || (spec.m > 0 && grid.u < 2)) {
    throw InputError("grid needs at least 2 samples per dimension");
  }
  // grad(g)^T f + c as one polynomial over the ambient variables.
  Polynomial rate = spec.c;
  for (int i = 0; i < spec.n; ++i) rate += spec.g.Partial(i) * spec.f[i];

  std::vector<std::vector<double>> axes;
  for (int i = 0; i < spec.n; ++i) axes.push_back(Linspace(-radius, radius, grid.x));
  for (int j = 0; j < spec.m; ++j) {
    const auto& iv = spec.y_bounding_box[j];
    axes.push_back(Linspace(iv.lo, iv.hi, grid.u));
  }
  axes.push_back(Linspace(0.0, spec.T, grid.t));

  AlphaEstimate est;
  est.alpha_lower = std::numeric_limits<double>::infinity();
  est.alpha_upper = -std::numeric_limits<double>::infinity();
  ForEachProduct(axes, [&](const Eigen::VectorXd& p) {
    if (p.head(spec.n).norm() > radius) return;
    if (spec.m > 0 && EvaluateInputConstraint(spec, p.segment(spec.n, spec.m)) < 0.0) {
      return;
    }
    const double v = rate.Evaluate(AsSpan(p));
    est.alpha_lower = std::min(est.alpha_lower, v);
    est.alpha_upper = std::max(est.alpha_upper, v);
    est.points.push_back(p);
  });
  if (est.points.empty()) throw InputError("no admissible grid point");
  return est;
}

std::pair<Polynomial, Polynomial> TrivialCertificates(const ProblemSpec& spec,
                                                      double alpha_lower,
                                                      double alpha_upper) {
  const Polynomial t = Polynomial::Variable(spec.variables, spec.time_index());
  const Polynomial remaining = spec.T - t;
  return {spec.g + alpha_lower * remaining, spec.g + alpha_upper * remaining};
}

}  // namespace reachbound
