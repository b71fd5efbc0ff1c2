#include "reachbound/verify/contour.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "common/grid.h"
#include "reachbound/common/eigen_span.h"
#include "reachbound/common/errors.h"
#include "reachbound/sdpsolve/certificate.h"
#include "reachbound/verify/value_checks.h"

namespace reachbound {
namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int Find(int a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void Join(int a, int b) { parent_[Find(a)] = Find(b); }

 private:
  std::vector<int> parent_;
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

double EvalState(const Polynomial& p, const ProblemSpec& spec, const Eigen::VectorXd& x) {
  Eigen::VectorXd point = Eigen::VectorXd::Zero(spec.num_vars());
  point.head(spec.n) = x;
  return p.Evaluate(AsSpan(point));
}

}  // namespace

LevelSet MarchingSquares(const std::vector<double>& xs, const std::vector<double>& ys,
                         const Eigen::MatrixXd& values, double level) {
  const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  if (values.rows() != nx || values.cols() != ny) throw InputError("grid/value size mismatch");
  LevelSet out;
  out.level = level;
  if (nx < 2 || ny < 2) return out;
  const int horizontal = (nx - 1) * ny;
  const int total_edges = horizontal + nx * (ny - 1);
  auto hedge = [&](int i, int j) { return j * (nx - 1) + i; };
  auto vedge = [&](int i, int j) { return horizontal + j * nx + i; };

  UnionFind uf(total_edges);
  std::vector<int> degree(total_edges, 0);
  auto cross = [&](int i0, int j0, int i1, int j1) -> Eigen::Vector2d {
    const double a = values(i0, j0), b = values(i1, j1);
    const double s = a == b ? 0.5 : (level - a) / (b - a);
    return {xs[i0] + s * (xs[i1] - xs[i0]), ys[j0] + s * (ys[j1] - ys[j0])};
  };

  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const bool b0 = values(i, j) > level, b1 = values(i + 1, j) > level;
      const bool b2 = values(i + 1, j + 1) > level, b3 = values(i, j + 1) > level;
      // Edges: 0 bottom, 1 right, 2 top, 3 left.
      const int id[4] = {hedge(i, j), vedge(i + 1, j), hedge(i, j + 1), vedge(i, j)};
      const Eigen::Vector2d pt[4] = {
          b0 != b1 ? cross(i, j, i + 1, j) : Eigen::Vector2d::Zero(),
          b1 != b2 ? cross(i + 1, j, i + 1, j + 1) : Eigen::Vector2d::Zero(),
          b3 != b2 ? cross(i, j + 1, i + 1, j + 1) : Eigen::Vector2d::Zero(),
          b0 != b3 ? cross(i, j, i, j + 1) : Eigen::Vector2d::Zero()};
      std::vector<std::pair<int, int>> pairs;
      const bool c[4] = {b0 != b1, b1 != b2, b3 != b2, b0 != b3};
      const int count = c[0] + c[1] + c[2] + c[3];
      if (count == 2) {
        int e[2], k = 0;
        for (int q = 0; q < 4; ++q) {
          if (c[q]) e[k++] = q;
        }
        pairs.push_back({e[0], e[1]});
      } else if (count == 4) {
        const double center =
            0.25 * (values(i, j) + values(i + 1, j) + values(i + 1, j + 1) + values(i, j + 1));
        if ((center > level) == b0) {
          pairs.push_back({0, 1});
          pairs.push_back({2, 3});
        } else {
          pairs.push_back({3, 0});
          pairs.push_back({1, 2});
        }
      }
      for (const auto& [p, q] : pairs) {
        out.segments.push_back({pt[p], pt[q]});
        uf.Join(id[p], id[q]);
        ++degree[id[p]];
        ++degree[id[q]];
      }
    }
  }
  std::set<int> roots, open;
  for (int e = 0; e < total_edges; ++e) {
    if (degree[e] == 0) continue;
    roots.insert(uf.Find(e));
    if (degree[e] == 1) open.insert(uf.Find(e));
  }
  out.components = static_cast<int>(roots.size());
  out.closed_components = out.components - static_cast<int>(open.size());
  return out;
}

ContourData ContourGrid(const Polynomial& lower, const Polynomial& upper,
                        const ProblemSpec& spec, double level,
                        const std::vector<Interval>& window, int resolution) {
  if (spec.n != 2) throw InputError("contour grids need a 2D state space");
  if (window.size() != 2) throw InputError("contour window must have two intervals");
  if (resolution < 2) throw InputError("contour resolution must be at least 2");
  ContourData d;
  d.window = window;
  d.resolution = resolution;
  d.level = level;
  d.xs = Linspace(window[0].lo, window[0].hi, resolution);
  d.ys = Linspace(window[1].lo, window[1].hi, resolution);
  d.lower.resize(resolution, resolution);
  d.upper.resize(resolution, resolution);
  Eigen::VectorXd p = Eigen::VectorXd::Zero(spec.num_vars());
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      p[0] = d.xs[i];
      p[1] = d.ys[j];
      d.lower(i, j) = lower.Evaluate(AsSpan(p));
      d.upper(i, j) = upper.Evaluate(AsSpan(p));
    }
  }
  d.lower_set = MarchingSquares(d.xs, d.ys, d.lower, level);
  d.upper_set = MarchingSquares(d.xs, d.ys, d.upper, level);
  return d;
}

ContourData ContourGrid(const ValueCertificate& cert, double level,
                        const std::vector<Interval>& window, int resolution) {
  return ContourGrid(cert.lower(), cert.upper(), cert.spec, level, window, resolution);
}

std::string ContourCsv(const ContourData& d) {
  std::ostringstream os;
  os << "x1,x2,Vl,Vu\n";
  for (size_t j = 0; j < d.ys.size(); ++j) {
    for (size_t i = 0; i < d.xs.size(); ++i) {
      os << Num(d.xs[i]) << "," << Num(d.ys[j]) << "," << Num(d.lower(i, j)) << ","
         << Num(d.upper(i, j)) << "\n";
    }
  }
  return os.str();
}

namespace {

nlohmann::json LevelSetJson(const LevelSet& s) {
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& seg : s.segments) {
    segs.push_back({{seg.a[0], seg.a[1]}, {seg.b[0], seg.b[1]}});
  }
  return {{"level", s.level},
          {"components", s.components},
          {"closed_components", s.closed_components},
          {"segments", segs}};
}

}  // namespace

nlohmann::json SegmentsJson(const ContourData& d) {
  return {{"window", {{d.window[0].lo, d.window[0].hi}, {d.window[1].lo, d.window[1].hi}}},
          {"resolution", d.resolution},
          {"lower", LevelSetJson(d.lower_set)},
          {"upper", LevelSetJson(d.upper_set)}};
}

bool IsScalarBilinearExample(const ProblemSpec& spec) {
  if (spec.n != 1 || spec.m != 1 || !spec.c.terms().empty()) return false;
  const Polynomial x = Polynomial::Variable(spec.variables, 0);
  const Polynomial u = Polynomial::Variable(spec.variables, 1);
  if (!(spec.f[0] == x * u) || !(spec.g == x)) return false;
  return spec.y_bounding_box[0].lo == -1.0 && spec.y_bounding_box[0].hi == 1.0;
}

Profile1d ProfileGrid1d(const Polynomial& lower, const Polynomial& upper,
                        const ProblemSpec& spec, const Interval& window, int resolution) {
  if (spec.n != 1) throw InputError("1D profiles need a scalar state");
  if (resolution < 2) throw InputError("profile resolution must be at least 2");
  Profile1d p;
  p.xs = Linspace(window.lo, window.hi, resolution);
  const bool analytic = IsScalarBilinearExample(spec);
  for (const double x : p.xs) {
    const Eigen::VectorXd s = Eigen::VectorXd::Constant(1, x);
    p.lower.push_back(EvalState(lower, spec, s));
    p.upper.push_back(EvalState(upper, spec, s));
    if (analytic) p.analytic.push_back(AnalyticValue1d(x, 0.0, spec.T));
  }
  return p;
}

std::string ProfileCsv(const Profile1d& p) {
  std::ostringstream os;
  const bool analytic = !p.analytic.empty();
  os << "x,Vl,Vu" << (analytic ? ",analytic" : "") << "\n";
  for (size_t i = 0; i < p.xs.size(); ++i) {
    os << Num(p.xs[i]) << "," << Num(p.lower[i]) << "," << Num(p.upper[i]);
    if (analytic) os << "," << Num(p.analytic[i]);
    os << "\n";
  }
  return os.str();
}

Eigen::VectorXd TargetCenter(const ProblemSpec& spec) {
  std::vector<std::vector<double>> axes;
  const int per_axis = spec.n == 1 ? 2001 : spec.n == 2 ? 201 : 31;
  for (int i = 0; i < spec.n; ++i) {
    axes.push_back(Linspace(spec.omega[i].lo, spec.omega[i].hi, per_axis));
  }
  Eigen::VectorXd best;
  double best_value = std::numeric_limits<double>::infinity();
  ForEachProduct(axes, [&](const Eigen::VectorXd& x) {
    const double v = EvalState(spec.g, spec, x);
    if (v < best_value) {
      best_value = v;
      best = x;
    }
  });
  std::vector<Polynomial> grad;
  std::vector<std::vector<Polynomial>> hess(spec.n);
  for (int i = 0; i < spec.n; ++i) grad.push_back(spec.g.Partial(i));
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < spec.n; ++j) hess[i].push_back(grad[i].Partial(j));
  }
  for (int it = 0; it < 20; ++it) {
    Eigen::VectorXd gv(spec.n);
    Eigen::MatrixXd hv(spec.n, spec.n);
    for (int i = 0; i < spec.n; ++i) {
      gv[i] = EvalState(grad[i], spec, best);
      for (int j = 0; j < spec.n; ++j) hv(i, j) = EvalState(hess[i][j], spec, best);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(hv);
    if (llt.info() != Eigen::Success) break;
    const Eigen::VectorXd step = llt.solve(gv);
    const Eigen::VectorXd next = best - step;
    if (!(EvalState(spec.g, spec, next) <= EvalState(spec.g, spec, best))) break;
    best = next;
    if (step.norm() < 1e-14) break;
  }
  return best;
}

double RadialLevelCrossing(const Polynomial& v, const ProblemSpec& spec,
                           const Eigen::Vector2d& center, double angle, double level) {
  if (spec.n != 2) throw InputError("radial crossings need a 2D state space");
  const Eigen::Vector2d dir(std::cos(angle), std::sin(angle));
  const auto box = StateRegionBox(spec);
  double r_max = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i) {
    if (dir[i] > 1e-15) r_max = std::min(r_max, (box[i].hi - center[i]) / dir[i]);
    if (dir[i] < -1e-15) r_max = std::min(r_max, (box[i].lo - center[i]) / dir[i]);
  }
  r_max = std::max(r_max, 0.0);
  auto inside = [&](double r) {
    const Eigen::VectorXd x = center + r * dir;
    return EvalState(spec.h_x, spec, x) >= 0.0 && EvalState(v, spec, x) <= level;
  };
  constexpr int kScan = 4000;
  const double dr = r_max / kScan;
  for (int k = kScan; k >= 0; --k) {
    const double r = k * dr;
    if (!inside(r)) continue;
    if (k == kScan) return r_max;
    double lo = r, hi = r + dr;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (inside(mid) ? lo : hi) = mid;
    }
    return lo;
  }
  return 0.0;
}

std::vector<double> RadialProfile(const Polynomial& v, const ProblemSpec& spec,
                                  const Eigen::Vector2d& center, int rays, double level) {
  std::vector<double> out;
  for (int k = 0; k < rays; ++k) {
    out.push_back(RadialLevelCrossing(v, spec, center, 2.0 * M_PI * k / rays, level));
  }
  return out;
}

NestingReport CheckNesting(const ContourData& d, const ProblemSpec& spec, double tolerance) {
  NestingReport rep;
  rep.tolerance = tolerance;
  rep.worst_excess = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd x(2);
  for (size_t i = 0; i < d.xs.size(); ++i) {
    for (size_t j = 0; j < d.ys.size(); ++j) {
      x << d.xs[i], d.ys[j];
      if (EvalState(spec.h_x, spec, x) < 0.0 || d.upper(i, j) > d.level) continue;
      ++rep.nodes;
      const double excess = d.lower(i, j) - d.level;
      rep.worst_excess = std::max(rep.worst_excess, excess);
      if (excess > tolerance) ++rep.violations;
    }
  }
  if (rep.nodes == 0) rep.worst_excess = 0.0;
  return rep;
}

nlohmann::json ToJson(const NestingReport& r) {
  return {{"nodes", r.nodes},
          {"violations", r.violations},
          {"tolerance", r.tolerance},
          {"worst_excess", r.worst_excess},
          {"passed", r.passed()}};
}

}  // namespace reachbound
