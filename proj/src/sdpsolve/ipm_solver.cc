#include "reachbound/sdpsolve/ipm_solver.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace reachbound {

std::string ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasibleSuspected: return "infeasible-suspected";
    case SolveStatus::kMaxIterations: return "max-iterations";
    case SolveStatus::kNumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Blocks = std::vector<MatrixXd>;

struct SparseEntry {
  int row;
  int col;
  double value;
};

// The part of one constraint that lives in one block.
struct BlockRow {
  int con;
  std::vector<SparseEntry> entries;
};

// Constraint data after dependent rows have been removed.
struct Data {
  int m{0};
  int nf{0};
  std::vector<int> sizes;
  std::vector<std::vector<BlockRow>> by_block;
  Blocks c;
  MatrixXd f;
  VectorXd b;
  VectorXd cf;
  int total_size{0};
};

double Inner(const std::vector<SparseEntry>& e, const MatrixXd& x) {
  double acc = 0.0;
  for (const auto& t : e) {
    acc += t.row == t.col ? t.value * x(t.row, t.row)
                          : t.value * (x(t.row, t.col) + x(t.col, t.row));
  }
  return acc;
}

void AddScaled(const std::vector<SparseEntry>& e, double s, MatrixXd* out) {
  for (const auto& t : e) {
    (*out)(t.row, t.col) += s * t.value;
    if (t.row != t.col) (*out)(t.col, t.row) += s * t.value;
  }
}

VectorXd ApplyA(const Data& d, const Blocks& x) {
  VectorXd out = VectorXd::Zero(d.m);
  for (size_t j = 0; j < d.by_block.size(); ++j) {
    for (const auto& r : d.by_block[j]) out[r.con] += Inner(r.entries, x[j]);
  }
  return out;
}

Blocks ApplyAdjoint(const Data& d, const VectorXd& y) {
  Blocks out;
  for (size_t j = 0; j < d.sizes.size(); ++j) {
    MatrixXd z = MatrixXd::Zero(d.sizes[j], d.sizes[j]);
    for (const auto& r : d.by_block[j]) AddScaled(r.entries, y[r.con], &z);
    out.push_back(std::move(z));
  }
  return out;
}

double Dot(const Blocks& a, const Blocks& b) {
  double acc = 0.0;
  for (size_t j = 0; j < a.size(); ++j) acc += a[j].cwiseProduct(b[j]).sum();
  return acc;
}

double FrobNorm(const Blocks& a) {
  double acc = 0.0;
  for (const auto& m : a) acc += m.squaredNorm();
  return std::sqrt(acc);
}

MatrixXd Sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Largest step in [0, inf) keeping L^{-1}(X + a dX)L^{-T} PSD, given X = LL^T.
double MaxStep(const MatrixXd& l, const MatrixXd& dx) {
  const MatrixXd t = l.triangularView<Eigen::Lower>().solve(dx);
  const MatrixXd s = l.triangularView<Eigen::Lower>().solve(t.transpose());
  const double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(Sym(s), Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .minCoeff();
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

// Column of the dense constraint matrix in symmetric-vector coordinates.
std::vector<int> SvecOffsets(const std::vector<int>& sizes, int* total) {
  std::vector<int> off;
  int acc = 0;
  for (int s : sizes) {
    off.push_back(acc);
    acc += s * (s + 1) / 2;
  }
  *total = acc;
  return off;
}

int SvecIndex(int size, int r, int c) {
  if (r > c) std::swap(r, c);
  // Row-major upper triangle.
  return r * size - r * (r - 1) / 2 + (c - r);
}

struct Precheck {
  std::vector<int> kept;
  bool consistent{true};
};

Precheck CheckRank(const SdpInstance& inst) {
  const int m = inst.num_constraints();
  int svec_total = 0;
  const std::vector<int> off = SvecOffsets(inst.block_sizes, &svec_total);
  const int cols = svec_total + inst.num_free();
  MatrixXd at = MatrixXd::Zero(cols, m);
  for (int i = 0; i < m; ++i) {
    const auto& c = inst.constraints[i];
    for (const auto& e : c.entries) {
      const int k = off[e.block] + SvecIndex(inst.block_sizes[e.block], e.row, e.col);
      at(k, i) += e.row == e.col ? e.value : 2.0 * e.value;
    }
    for (const auto& t : c.free_terms) at(svec_total + t.index, i) += t.value;
  }
  Precheck out;
  Eigen::ColPivHouseholderQR<MatrixXd> qr(at);
  qr.setThreshold(1e-11);
  const int rank = static_cast<int>(qr.rank());
  const auto& perm = qr.colsPermutation().indices();
  for (int k = 0; k < rank; ++k) out.kept.push_back(perm[k]);
  std::sort(out.kept.begin(), out.kept.end());
  if (rank == m) return out;

  MatrixXd basis(cols, rank);
  VectorXd b_kept(rank);
  for (int k = 0; k < rank; ++k) {
    basis.col(k) = at.col(out.kept[k]);
    b_kept[k] = inst.constraints[out.kept[k]].rhs;
  }
  Eigen::HouseholderQR<MatrixXd> bqr(basis);
  std::vector<bool> is_kept(m, false);
  for (int k : out.kept) is_kept[k] = true;
  for (int i = 0; i < m; ++i) {
    if (is_kept[i]) continue;
    const VectorXd coef = bqr.solve(at.col(i));
    const double predicted = coef.dot(b_kept);
    const double rhs = inst.constraints[i].rhs;
    if (std::abs(predicted - rhs) > 1e-8 * (1.0 + std::abs(rhs) + coef.lpNorm<1>())) {
      out.consistent = false;
    }
  }
  return out;
}

struct FreeReduction {
  std::vector<int> kept;
  bool bounded{true};
};

// Free columns that are combinations of other free columns only move w along
// the null space of F; they are dropped and fixed at zero.
FreeReduction ReduceFree(const SdpInstance& inst) {
  FreeReduction out;
  const int nf = inst.num_free();
  const int m = inst.num_constraints();
  if (nf == 0) return out;
  MatrixXd f = MatrixXd::Zero(m, nf);
  for (int i = 0; i < m; ++i) {
    for (const auto& t : inst.constraints[i].free_terms) f(i, t.index) += t.value;
  }
  Eigen::ColPivHouseholderQR<MatrixXd> qr(f);
  qr.setThreshold(1e-11);
  const int rank = static_cast<int>(qr.rank());
  const auto& perm = qr.colsPermutation().indices();
  for (int k = 0; k < rank; ++k) out.kept.push_back(perm[k]);
  std::sort(out.kept.begin(), out.kept.end());
  if (rank == nf) return out;

  MatrixXd basis(m, rank);
  VectorXd c_kept(rank);
  for (int k = 0; k < rank; ++k) {
    basis.col(k) = f.col(out.kept[k]);
    c_kept[k] = inst.free_objective[out.kept[k]];
  }
  std::vector<bool> is_kept(nf, false);
  for (int k : out.kept) is_kept[k] = true;
  for (int j = 0; j < nf; ++j) {
    if (is_kept[j]) continue;
    const VectorXd coef = rank > 0 ? VectorXd(basis.colPivHouseholderQr().solve(f.col(j)))
                                   : VectorXd::Zero(0);
    const double predicted = rank > 0 ? coef.dot(c_kept) : 0.0;
    const double cj = inst.free_objective[j];
    if (std::abs(predicted - cj) > 1e-8 * (1.0 + std::abs(cj) + coef.lpNorm<1>())) {
      out.bounded = false;
    }
  }
  return out;
}

SdpInstance RestrictFree(const SdpInstance& inst, const std::vector<int>& kept) {
  std::vector<int> index(inst.num_free(), -1);
  for (size_t k = 0; k < kept.size(); ++k) index[kept[k]] = static_cast<int>(k);
  SdpInstance out = inst;
  out.free_names.clear();
  out.free_objective = VectorXd::Zero(static_cast<int>(kept.size()));
  for (size_t k = 0; k < kept.size(); ++k) {
    out.free_names.push_back(inst.free_names[kept[k]]);
    out.free_objective[k] = inst.free_objective[kept[k]];
  }
  for (auto& c : out.constraints) {
    std::vector<FreeTerm> terms;
    for (const auto& t : c.free_terms) {
      if (index[t.index] >= 0) terms.push_back({index[t.index], t.value});
    }
    c.free_terms = std::move(terms);
  }
  return out;
}

Data BuildData(const SdpInstance& inst, const std::vector<int>& kept) {
  Data d;
  d.m = static_cast<int>(kept.size());
  d.nf = inst.num_free();
  d.sizes = inst.block_sizes;
  d.by_block.resize(d.sizes.size());
  d.f = MatrixXd::Zero(d.m, d.nf);
  d.b.resize(d.m);
  for (int i = 0; i < d.m; ++i) {
    const auto& c = inst.constraints[kept[i]];
    std::vector<std::vector<SparseEntry>> per(d.sizes.size());
    for (const auto& e : c.entries) per[e.block].push_back({e.row, e.col, e.value});
    for (size_t j = 0; j < per.size(); ++j) {
      if (!per[j].empty()) d.by_block[j].push_back({i, std::move(per[j])});
    }
    for (const auto& t : c.free_terms) d.f(i, t.index) += t.value;
    d.b[i] = c.rhs;
  }
  for (int s : d.sizes) {
    d.c.push_back(MatrixXd::Zero(s, s));
    d.total_size += s;
  }
  for (const auto& e : inst.block_objective) {
    d.c[e.block](e.row, e.col) += e.value;
    if (e.row != e.col) d.c[e.block](e.col, e.row) += e.value;
  }
  d.cf = inst.num_free() > 0 ? inst.free_objective : VectorXd::Zero(0);
  return d;
}

struct Iterate {
  Blocks x;
  Blocks z;
  VectorXd y;
  VectorXd w;
};

struct Measures {
  double pobj{0.0};
  double dobj{0.0};
  double pres{0.0};
  double dres{0.0};
  double gap{0.0};
  double mu{0.0};
  bool finite{true};
  double Merit() const {
    return std::max({pres / kAcceptPrimalResidual, dres / kAcceptDualResidual,
                     gap / kAcceptGap});
  }
};

// Per-block Nesterov-Todd scaling: W Z W = X with W = G G^T and
// G^{-1} X G^{-T} = G^T Z G = diag(v).
struct Scaling {
  MatrixXd lx;
  MatrixXd lz;
  MatrixXd g;
  MatrixXd ginv;
  MatrixXd w;
  VectorXd v;
};

bool ComputeScaling(const MatrixXd& x, const MatrixXd& z, Scaling* s) {
  Eigen::LLT<MatrixXd> cx(x);
  Eigen::LLT<MatrixXd> cz(z);
  if (cx.info() != Eigen::Success || cz.info() != Eigen::Success) return false;
  s->lx = cx.matrixL();
  s->lz = cz.matrixL();
  const MatrixXd ltzl = Sym(s->lx.transpose() * z * s->lx);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(ltzl);
  if (es.info() != Eigen::Success) return false;
  const VectorXd lam = es.eigenvalues().cwiseMax(std::numeric_limits<double>::min());
  s->v = lam.cwiseSqrt();
  const VectorXd isq = s->v.cwiseSqrt().cwiseInverse();
  s->g = s->lx * es.eigenvectors() * isq.asDiagonal();
  const MatrixXd linv = s->lx.triangularView<Eigen::Lower>().solve(
      MatrixXd::Identity(x.rows(), x.cols()));
  s->ginv = s->v.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose() * linv;
  s->w = Sym(s->g * s->g.transpose());
  return s->v.allFinite() && s->w.allFinite();
}

}  // namespace

SdpSolution Solve(const SdpInstance& instance, const SolverOptions& options) {
  const FreeReduction free = ReduceFree(instance);
  if (static_cast<int>(free.kept.size()) < instance.num_free()) {
    SdpSolution sol = Solve(RestrictFree(instance, free.kept), options);
    VectorXd w = VectorXd::Zero(instance.num_free());
    for (size_t k = 0; k < free.kept.size(); ++k) w[free.kept[k]] = sol.free[k];
    sol.free = std::move(w);
    if (!free.bounded) {
      sol.status = SolveStatus::kInfeasibleSuspected;
      sol.message = "objective is unbounded along a free direction";
    }
    return sol;
  }
  SdpSolution sol;
  const Precheck pre = CheckRank(instance);
  sol.diagnostics.dropped_constraints = instance.num_constraints() - static_cast<int>(pre.kept.size());
  const Data d = BuildData(instance, pre.kept);
  const int nb = static_cast<int>(d.sizes.size());

  auto fill_empty = [&]() {
    for (int s : d.sizes) {
      sol.blocks.push_back(MatrixXd::Zero(s, s));
      sol.dual_blocks.push_back(MatrixXd::Zero(s, s));
    }
    sol.free = VectorXd::Zero(d.nf);
    sol.y = VectorXd::Zero(instance.num_constraints());
  };
  if (!pre.consistent) {
    fill_empty();
    sol.status = SolveStatus::kInfeasibleSuspected;
    sol.message = "equality constraints are inconsistent";
    return sol;
  }
  if (d.m == 0 || nb == 0) {
    fill_empty();
    sol.status = SolveStatus::kNumericalFailure;
    sol.message = "instance needs at least one constraint and one block";
    return sol;
  }

  // Starting point.
  const double n_total = d.total_size;
  const double rt = std::sqrt(n_total);
  double xi = std::max(10.0, rt), eta = std::max(10.0, rt);
  for (int i = 0; i < d.m; ++i) {
    double norm2 = 0.0;
    for (int j = 0; j < nb; ++j) {
      for (const auto& r : d.by_block[j]) {
        if (r.con != i) continue;
        for (const auto& e : r.entries) norm2 += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
      }
    }
    norm2 += d.f.row(i).squaredNorm();
    const double an = std::sqrt(norm2);
    xi = std::max(xi, rt * (1.0 + std::abs(d.b[i])) / (1.0 + an));
    eta = std::max(eta, an);
  }
  const double cnorm = std::sqrt(FrobNorm(d.c) * FrobNorm(d.c) + d.cf.squaredNorm());
  eta = std::max(eta, cnorm);
  xi *= options.initial_scale;
  eta *= options.initial_scale;

  Iterate it;
  for (int s : d.sizes) {
    it.x.push_back(xi * MatrixXd::Identity(s, s));
    it.z.push_back(eta * MatrixXd::Identity(s, s));
  }
  it.y = VectorXd::Zero(d.m);
  it.w = VectorXd::Zero(d.nf);

  auto measure = [&](const Iterate& p, VectorXd* rp, Blocks* rd, VectorXd* rf) {
    Measures ms;
    *rp = d.b - ApplyA(d, p.x) - d.f * p.w;
    const Blocks aty = ApplyAdjoint(d, p.y);
    rd->clear();
    for (int j = 0; j < nb; ++j) rd->push_back(d.c[j] - aty[j] - p.z[j]);
    *rf = d.cf - d.f.transpose() * p.y;
    ms.pobj = Dot(d.c, p.x) + d.cf.dot(p.w);
    ms.dobj = d.b.dot(p.y);
    ms.pres = rp->lpNorm<Eigen::Infinity>();
    ms.dres = (FrobNorm(*rd) + rf->norm()) / (1.0 + cnorm);
    ms.gap = std::abs(ms.pobj - ms.dobj) / (1.0 + std::abs(ms.pobj));
    ms.mu = Dot(p.x, p.z) / n_total;
    ms.finite = std::isfinite(ms.pobj) && std::isfinite(ms.dobj) &&
                std::isfinite(ms.pres) && std::isfinite(ms.dres);
    return ms;
  };

  Iterate best = it;
  Measures best_m;
  best_m.pres = best_m.dres = best_m.gap = std::numeric_limits<double>::infinity();
  SolveStatus status = SolveStatus::kMaxIterations;
  std::string message = "iteration limit reached";
  int iter = 0;
  int stalls = 0;

  for (;; ++iter) {
    VectorXd rp, rf;
    Blocks rd;
    const Measures ms = measure(it, &rp, &rd, &rf);
    if (!ms.finite) {
      status = SolveStatus::kNumericalFailure;
      message = "non-finite iterate";
      break;
    }
    if (ms.Merit() <= best_m.Merit()) {
      best = it;
      best_m = ms;
    }
    if (options.verbose) {
      std::fprintf(stderr, "%3d pobj % .10e dobj % .10e pres %.2e dres %.2e gap %.2e mu %.2e\n",
                   iter, ms.pobj, ms.dobj, ms.pres, ms.dres, ms.gap, ms.mu);
    }
    if (ms.pres <= options.tol_feas && ms.dres <= options.tol_feas &&
        ms.gap <= options.tol_gap) {
      status = SolveStatus::kOptimal;
      message = "converged";
      break;
    }
    if (ms.dobj > 1e10 * (1.0 + std::abs(ms.pobj)) && ms.dres < 1e-3) {
      status = SolveStatus::kInfeasibleSuspected;
      message = "dual objective diverges: primal infeasible";
      break;
    }
    if (ms.pobj < -1e10 && ms.pres < 1e-3) {
      status = SolveStatus::kInfeasibleSuspected;
      message = "primal objective diverges: dual infeasible";
      break;
    }
    if (iter >= options.max_iters) break;

    std::vector<Scaling> sc(nb);
    bool ok = true;
    for (int j = 0; j < nb && ok; ++j) ok = ComputeScaling(it.x[j], it.z[j], &sc[j]);
    if (!ok) {
      status = SolveStatus::kNumericalFailure;
      message = "lost positive definiteness";
      break;
    }

    // Schur complement M_ik = <A_i, W A_k W>.
    MatrixXd kkt = MatrixXd::Zero(d.m + d.nf, d.m + d.nf);
    for (int j = 0; j < nb; ++j) {
      const MatrixXd& w = sc[j].w;
      const int s = d.sizes[j];
      for (const auto& rk : d.by_block[j]) {
        MatrixXd wak = MatrixXd::Zero(s, s);
        for (const auto& e : rk.entries) {
          if (e.row == e.col) {
            wak.noalias() += e.value * w.col(e.row) * w.row(e.row);
          } else {
            wak.noalias() += e.value * (w.col(e.row) * w.row(e.col) + w.col(e.col) * w.row(e.row));
          }
        }
        for (const auto& ri : d.by_block[j]) kkt(ri.con, rk.con) += Inner(ri.entries, wak);
      }
    }
    kkt.topLeftCorner(d.m, d.m) = Sym(kkt.topLeftCorner(d.m, d.m));
    kkt.topRightCorner(d.m, d.nf) = d.f;
    kkt.bottomLeftCorner(d.nf, d.m) = d.f.transpose();
    Eigen::PartialPivLU<MatrixXd> lu(kkt);

    auto direction = [&](const Blocks& rc, Blocks* dx, Blocks* dz, VectorXd* dy, VectorXd* dw) {
      Blocks t(nb);
      for (int j = 0; j < nb; ++j) t[j] = rc[j] - sc[j].w * rd[j] * sc[j].w;
      VectorXd rhs(d.m + d.nf);
      rhs.head(d.m) = rp - ApplyA(d, t);
      rhs.tail(d.nf) = rf;
      VectorXd sol_v = lu.solve(rhs);
      sol_v += lu.solve(rhs - kkt * sol_v);
      *dy = sol_v.head(d.m);
      *dw = sol_v.tail(d.nf);
      const Blocks atdy = ApplyAdjoint(d, *dy);
      dx->resize(nb);
      dz->resize(nb);
      for (int j = 0; j < nb; ++j) {
        (*dz)[j] = Sym(rd[j] - atdy[j]);
        (*dx)[j] = Sym(rc[j] - sc[j].w * (*dz)[j] * sc[j].w);
      }
    };
    auto steps = [&](const Blocks& dx, const Blocks& dz, double* ap, double* ad) {
      *ap = *ad = std::numeric_limits<double>::infinity();
      for (int j = 0; j < nb; ++j) {
        *ap = std::min(*ap, MaxStep(sc[j].lx, dx[j]));
        *ad = std::min(*ad, MaxStep(sc[j].lz, dz[j]));
      }
    };

    // Predictor.
    Blocks rc(nb);
    for (int j = 0; j < nb; ++j) rc[j] = -it.x[j];
    Blocks dx, dz;
    VectorXd dy, dw;
    direction(rc, &dx, &dz, &dy, &dw);
    double ap, ad;
    steps(dx, dz, &ap, &ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double mu_aff = 0.0;
    for (int j = 0; j < nb; ++j) {
      mu_aff += ((it.x[j] + ap * dx[j]).cwiseProduct(it.z[j] + ad * dz[j])).sum();
    }
    mu_aff /= n_total;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / ms.mu, 3.0), 0.0, 1.0);

    // Corrector.
    for (int j = 0; j < nb; ++j) {
      const Scaling& s = sc[j];
      const MatrixXd dxs = s.ginv * dx[j] * s.ginv.transpose();
      const MatrixXd dzs = s.g.transpose() * dz[j] * s.g;
      MatrixXd rhs = -Sym(dxs * dzs);
      for (int a = 0; a < rhs.rows(); ++a) rhs(a, a) += sigma * ms.mu - s.v[a] * s.v[a];
      MatrixXd rt_m(rhs.rows(), rhs.cols());
      for (int a = 0; a < rhs.rows(); ++a) {
        for (int b = 0; b < rhs.cols(); ++b) rt_m(a, b) = 2.0 * rhs(a, b) / (s.v[a] + s.v[b]);
      }
      rc[j] = Sym(s.g * rt_m * s.g.transpose());
    }
    direction(rc, &dx, &dz, &dy, &dw);
    steps(dx, dz, &ap, &ad);
    const double gamma = 0.9 + 0.09 * std::min({ap, ad, 1.0});
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    if (!std::isfinite(ap) || !std::isfinite(ad)) {
      status = SolveStatus::kNumericalFailure;
      message = "non-finite step length";
      break;
    }

    for (int j = 0; j < nb; ++j) {
      it.x[j] = Sym(it.x[j] + ap * dx[j]);
      it.z[j] = Sym(it.z[j] + ad * dz[j]);
    }
    it.w += ap * dw;
    it.y += ad * dy;

    stalls = (ap < 1e-8 && ad < 1e-8) ? stalls + 1 : 0;
    if (stalls >= 3) {
      status = SolveStatus::kNumericalFailure;
      message = "step lengths collapsed";
      break;
    }
  }

  // Report the best iterate.
  sol.blocks = best.x;
  sol.dual_blocks = best.z;
  sol.free = best.w;
  sol.y = VectorXd::Zero(instance.num_constraints());
  for (size_t k = 0; k < pre.kept.size(); ++k) sol.y[pre.kept[k]] = best.y[k];
  sol.primal_objective = best_m.pobj;
  sol.dual_objective = best_m.dobj;
  auto& diag = sol.diagnostics;
  diag.iterations = iter;
  // Residual against every original row, including dropped ones.
  const VectorXd ax = ApplyConstraints(instance, sol.blocks, sol.free);
  diag.primal_residual = 0.0;
  for (int i = 0; i < instance.num_constraints(); ++i) {
    diag.primal_residual =
        std::max(diag.primal_residual, std::abs(instance.constraints[i].rhs - ax[i]));
  }
  diag.dual_residual = best_m.dres;
  diag.gap = best_m.gap;
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& x : sol.blocks) {
    const double e = Eigen::SelfAdjointEigenSolver<MatrixXd>(x, Eigen::EigenvaluesOnly)
                         .eigenvalues()
                         .minCoeff();
    diag.min_eigenvalues.push_back(e);
    min_eig = std::min(min_eig, e);
  }
  const bool acceptable = diag.primal_residual <= kAcceptPrimalResidual &&
                          diag.dual_residual <= kAcceptDualResidual &&
                          diag.gap <= kAcceptGap && min_eig >= kAcceptMinEigenvalue;
  if (status == SolveStatus::kOptimal && !acceptable) {
    status = SolveStatus::kNumericalFailure;
    message = "converged iterate fails acceptance thresholds";
  } else if (status != SolveStatus::kOptimal && status != SolveStatus::kInfeasibleSuspected &&
             acceptable) {
    message += "; best iterate meets acceptance thresholds";
    status = SolveStatus::kOptimal;
  }
  sol.status = status;
  sol.message = message;
  return sol;
}

}  // namespace reachbound
