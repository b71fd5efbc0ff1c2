#pragma once

#include <random>

#include <Eigen/Dense>

#include "reachbound/sdpsolve/sdp_instance.h"

namespace reachbound::test {

struct PlantedSdp {
  SdpInstance instance;
  double planted_objective{0.0};
};

/// Random block SDP with a planted primal point X0 = M^T M, w0 and a planted
/// dual point (y0, Z0), so the optimum is at most the planted objective.
inline PlantedSdp MakePlantedSdp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nblocks(1, 3), bsize(1, 5), nfree(0, 3);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  PlantedSdp out;
  SdpInstance& inst = out.instance;
  const int nb = nblocks(rng);
  int svec = 0;
  for (int j = 0; j < nb; ++j) {
    inst.block_sizes.push_back(bsize(rng));
    inst.block_names.push_back("B" + std::to_string(j));
    svec += inst.block_sizes.back() * (inst.block_sizes.back() + 1) / 2;
  }
  const int nf = nfree(rng);
  for (int k = 0; k < nf; ++k) inst.free_names.push_back("w" + std::to_string(k));
  const int m = std::max(1, std::min(svec, nf + static_cast<int>(0.6 * svec)));

  std::vector<Eigen::MatrixXd> x0, z0;
  for (int s : inst.block_sizes) {
    const Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(s, s, [&] { return g(rng); });
    x0.push_back(a.transpose() * a + 0.1 * Eigen::MatrixXd::Identity(s, s));
    const Eigen::MatrixXd b = Eigen::MatrixXd::NullaryExpr(s, s, [&] { return g(rng); });
    z0.push_back(b.transpose() * b + 0.1 * Eigen::MatrixXd::Identity(s, s));
  }
  const Eigen::VectorXd w0 = Eigen::VectorXd::NullaryExpr(nf, [&] { return g(rng); });
  const Eigen::VectorXd y0 = Eigen::VectorXd::NullaryExpr(m, [&] { return g(rng); });

  for (int i = 0; i < m; ++i) {
    SdpConstraint c;
    c.label = "c" + std::to_string(i);
    for (int j = 0; j < nb; ++j) {
      for (int a = 0; a < inst.block_sizes[j]; ++a) {
        for (int b = a; b < inst.block_sizes[j]; ++b) {
          if (coin(rng) < 0.4) c.entries.push_back({j, a, b, g(rng)});
        }
      }
    }
    if (c.entries.empty()) c.entries.push_back({0, 0, 0, 1.0});
    for (int k = 0; k < nf; ++k) {
      if (coin(rng) < 0.5) c.free_terms.push_back({k, g(rng)});
    }
    inst.constraints.push_back(std::move(c));
  }
  // Every free variable must appear somewhere, else its cost makes the
  // problem unbounded.
  for (int k = 0; k < nf; ++k) inst.constraints[k % m].free_terms.push_back({k, 1.0 + coin(rng)});

  const Eigen::VectorXd ax = ApplyConstraints(inst, x0, w0);
  for (int i = 0; i < m; ++i) inst.constraints[i].rhs = ax[i];
  // C = A*(y0) + Z0 and c_f = F^T y0 make (y0, Z0) dual feasible.
  std::vector<Eigen::MatrixXd> cmat = z0;
  inst.free_objective = Eigen::VectorXd::Zero(nf);
  for (int i = 0; i < m; ++i) {
    for (const auto& e : inst.constraints[i].entries) {
      cmat[e.block](e.row, e.col) += y0[i] * e.value;
      if (e.row != e.col) cmat[e.block](e.col, e.row) += y0[i] * e.value;
    }
    for (const auto& t : inst.constraints[i].free_terms) {
      inst.free_objective[t.index] += y0[i] * t.value;
    }
  }
  for (int j = 0; j < nb; ++j) {
    for (int a = 0; a < inst.block_sizes[j]; ++a) {
      for (int b = a; b < inst.block_sizes[j]; ++b) {
        inst.block_objective.push_back({j, a, b, cmat[j](a, b)});
      }
    }
  }
  out.planted_objective = Objective(inst, x0, w0);
  return out;
}

}  // namespace reachbound::test
