#include "reachbound/verify/value_checks.h"

#include <cmath>
#include <limits>

#include "common/grid.h"
#include "reachbound/certbuild/sos_program.h"
#include "reachbound/common/eigen_span.h"
#include "reachbound/common/errors.h"
#include "reachbound/problem/input_signal.h"
#include "reachbound/sdpsolve/certificate.h"

namespace reachbound {

double AnalyticValue1d(double x, double t, double T) {
  if (x > 0.0) return std::exp(t - T) * x;
  if (x < 0.0) return std::exp(T - t) * x;
  return 0.0;
}

SandwichReport CheckSandwich1d(const Polynomial& lower, const Polynomial& upper,
                               const ProblemSpec& spec, int nx, int nt, double tolerance) {
  if (spec.n != 1 || spec.m != 1) {
    throw InputError("the 1D sandwich check needs one state and one input");
  }
  if (nx < 2 || nt < 2) throw InputError("sandwich grid needs at least 2 nodes per axis");
  SandwichReport rep;
  rep.tolerance = tolerance;
  rep.worst_lower_margin = rep.worst_upper_margin = std::numeric_limits<double>::infinity();
  Eigen::VectorXd p = Eigen::VectorXd::Zero(spec.num_vars());
  for (const double t : Linspace(0.0, spec.T, nt)) {
    for (const double x : Linspace(spec.omega[0].lo, spec.omega[0].hi, nx)) {
      p[0] = x;
      p[spec.time_index()] = t;
      const double v = AnalyticValue1d(x, t, spec.T);
      const double ml = v - lower.Evaluate(AsSpan(p));
      const double mu = upper.Evaluate(AsSpan(p)) - v;
      ++rep.nodes;
      if (ml < rep.worst_lower_margin) {
        rep.worst_lower_margin = ml;
        rep.worst_lower_point = {x, t};
      }
      if (mu < rep.worst_upper_margin) {
        rep.worst_upper_margin = mu;
        rep.worst_upper_point = {x, t};
      }
      if (!(ml >= -tolerance)) ++rep.lower_violations;
      if (!(mu >= -tolerance)) ++rep.upper_violations;
    }
  }
  return rep;
}

SandwichReport CheckSandwich1d(const ValueCertificate& cert, int nx, int nt, double tolerance) {
  return CheckSandwich1d(cert.lower(), cert.upper(), cert.spec, nx, nt, tolerance);
}

int DissipationReport::total_violations() const {
  int n = 0;
  for (const auto& [name, tally] : inequalities) n += tally.violations;
  return n;
}

namespace {

void Record(InequalityTally& tally, double margin, const Eigen::VectorXd& point,
            double tolerance) {
  if (tally.checked == 0 || margin < tally.worst_margin) {
    tally.worst_margin = margin;
    tally.worst_point = point;
  }
  ++tally.checked;
  if (!(margin >= -tolerance)) ++tally.violations;
}

}  // namespace

DissipationReport CheckDissipationAt(const Polynomial& lower, const Polynomial& upper,
                                     const ProblemSpec& spec,
                                     const std::vector<Eigen::VectorXd>& points,
                                     double tolerance) {
  const Polynomial rl = HjbResidual(lower, spec);
  const Polynomial ru = HjbResidual(upper, spec);
  DissipationReport rep;
  rep.tolerance = tolerance;
  rep.points = static_cast<int>(points.size());
  for (const char* name : {"lower_hjb", "upper_hjb", "lower_terminal", "upper_terminal"}) {
    rep.inequalities[name];
  }
  auto& lh = rep.inequalities["lower_hjb"];
  auto& uh = rep.inequalities["upper_hjb"];
  auto& lt = rep.inequalities["lower_terminal"];
  auto& ut = rep.inequalities["upper_terminal"];
  Eigen::VectorXd terminal;
  for (const auto& p : points) {
    if (p.size() != spec.num_vars()) throw InputError("grid point has the wrong dimension");
    Record(lh, rl.Evaluate(AsSpan(p)), p, tolerance);
    Record(uh, -ru.Evaluate(AsSpan(p)), p, tolerance);
    terminal = p;
    terminal[spec.time_index()] = spec.T;
    const double g = spec.g.Evaluate(AsSpan(terminal));
    Record(lt, g - lower.Evaluate(AsSpan(terminal)), terminal, tolerance);
    Record(ut, upper.Evaluate(AsSpan(terminal)) - g, terminal, tolerance);
  }
  return rep;
}

std::vector<Eigen::VectorXd> DissipationGridPoints(const ProblemSpec& spec,
                                                   const GridCounts& grid) {
  if (grid.x < 2 || grid.t < 2 || (spec.m > 0 && grid.u < 2)) {
    throw InputError("grid needs at least 2 samples per dimension");
  }
  const auto box = StateRegionBox(spec);
  std::vector<std::vector<double>> axes;
  for (int i = 0; i < spec.n; ++i) axes.push_back(Linspace(box[i].lo, box[i].hi, grid.x));
  for (int j = 0; j < spec.m; ++j) {
    axes.push_back(Linspace(spec.y_bounding_box[j].lo, spec.y_bounding_box[j].hi, grid.u));
  }
  axes.push_back(Linspace(0.0, spec.T, grid.t));
  std::vector<Eigen::VectorXd> points;
  ForEachProduct(axes, [&](const Eigen::VectorXd& p) {
    if (spec.h_x.Evaluate(AsSpan(p)) < 0.0) return;
    if (spec.m > 0 && EvaluateInputConstraint(spec, p.segment(spec.n, spec.m)) < 0.0) return;
    points.push_back(p);
  });
  if (points.empty()) throw InputError("dissipation grid has no admissible point");
  return points;
}

DissipationReport CheckDissipationGrid(const Polynomial& lower, const Polynomial& upper,
                                       const ProblemSpec& spec, const GridCounts& grid,
                                       double tolerance) {
  return CheckDissipationAt(lower, upper, spec, DissipationGridPoints(spec, grid), tolerance);
}

DissipationReport CheckDissipationGrid(const ValueCertificate& cert, const GridCounts& grid,
                                       double tolerance) {
  return CheckDissipationGrid(cert.lower(), cert.upper(), cert.spec, grid, tolerance);
}

namespace {

nlohmann::json PointJson(const Eigen::VectorXd& p) {
  return std::vector<double>(p.data(), p.data() + p.size());
}

}  // namespace

nlohmann::json ToJson(const SandwichReport& r) {
  return {{"nodes", r.nodes},
          {"tolerance", r.tolerance},
          {"lower_violations", r.lower_violations},
          {"upper_violations", r.upper_violations},
          {"worst_lower_margin", r.worst_lower_margin},
          {"worst_upper_margin", r.worst_upper_margin},
          {"worst_lower_point", PointJson(r.worst_lower_point)},
          {"worst_upper_point", PointJson(r.worst_upper_point)},
          {"passed", r.passed()}};
}

nlohmann::json ToJson(const DissipationReport& r) {
  nlohmann::json ineq = nlohmann::json::object();
  for (const auto& [name, t] : r.inequalities) {
    ineq[name] = {{"checked", t.checked},
                  {"violations", t.violations},
                  {"worst_margin", t.worst_margin},
                  {"worst_point", PointJson(t.worst_point)}};
  }
  return {{"tolerance", r.tolerance},
          {"points", r.points},
          {"inequalities", ineq},
          {"total_violations", r.total_violations()},
          {"passed", r.passed()}};
}

}  // namespace reachbound
