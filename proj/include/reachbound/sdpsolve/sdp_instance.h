#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reachbound/certbuild/sos_program.h"

namespace reachbound {

/// Entry (row, col) = (col, row) = value of a symmetric block matrix, with
/// row <= col.
struct BlockEntry {
  int block;
  int row;
  int col;
  double value;
};

/// <A_i, X> + F_i w = b_i, with A_i given by its upper-triangle entries.
struct SdpConstraint {
  std::string label;
  std::vector<BlockEntry> entries;
  std::vector<FreeTerm> free_terms;
  double rhs{0.0};
};

/// min <C, X> + c_f^T w  s.t.  A(X) + F w = b,  X = diag(X_1..X_k) PSD,
/// w free.
struct SdpInstance {
  std::vector<std::string> block_names;
  std::vector<int> block_sizes;
  std::vector<std::string> free_names;
  std::vector<SdpConstraint> constraints;
  Eigen::VectorXd free_objective;
  std::vector<BlockEntry> block_objective;

  int num_blocks() const { return static_cast<int>(block_sizes.size()); }
  int num_free() const { return static_cast<int>(free_names.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }
};

/// One PSD block per SOS decision, one row per equality, objective over the
/// free coefficients only. Deterministic.
SdpInstance Compile(const SosProgram& program);

/// <A_i, X> + F_i w for every row.
Eigen::VectorXd ApplyConstraints(const SdpInstance& instance,
                                 const std::vector<Eigen::MatrixXd>& blocks,
                                 const Eigen::VectorXd& free);

double Objective(const SdpInstance& instance,
                 const std::vector<Eigen::MatrixXd>& blocks,
                 const Eigen::VectorXd& free);

}  // namespace reachbound
