#include "reachbound/sdpsolve/sdp_instance.h"

namespace reachbound {

SdpInstance Compile(const SosProgram& program) {
  SdpInstance inst;
  const auto& vars = program.spec.variables;
  for (const auto* d : program.gram_decisions()) {
    inst.block_names.push_back(d->name);
    inst.block_sizes.push_back(d->size());
  }
  inst.free_names.resize(program.num_free);
  for (const auto& d : program.decisions) {
    if (d.kind != DecisionKind::kFree) continue;
    for (int b = 0; b < d.size(); ++b) {
      inst.free_names[d.slot + b] = d.name + "[" + d.basis[b].ToString(vars) + "]";
    }
  }
  inst.constraints.reserve(program.constraints.size());
  for (const auto& row : program.constraints) {
    SdpConstraint c;
    c.label = row.identity + "[" + row.monomial.ToString(vars) + "]";
    for (const auto& t : row.gram_terms) {
      // The row coefficient multiplies Q(r, c) once; <A, Q> counts an
      // off-diagonal entry twice.
      c.entries.push_back({t.block, t.row, t.col, t.row == t.col ? t.value : 0.5 * t.value});
    }
    c.free_terms = row.free_terms;
    c.rhs = row.rhs;
    inst.constraints.push_back(std::move(c));
  }
  inst.free_objective = program.objective;
  return inst;
}

Eigen::VectorXd ApplyConstraints(const SdpInstance& instance,
                                 const std::vector<Eigen::MatrixXd>& blocks,
                                 const Eigen::VectorXd& free) {
  Eigen::VectorXd out(instance.num_constraints());
  for (int i = 0; i < instance.num_constraints(); ++i) {
    const auto& c = instance.constraints[i];
    double acc = 0.0;
    for (const auto& e : c.entries) {
      const auto& x = blocks[e.block];
      acc += e.row == e.col ? e.value * x(e.row, e.col)
                            : e.value * (x(e.row, e.col) + x(e.col, e.row));
    }
    for (const auto& t : c.free_terms) acc += t.value * free[t.index];
    out[i] = acc;
  }
  return out;
}

double Objective(const SdpInstance& instance,
                 const std::vector<Eigen::MatrixXd>& blocks,
                 const Eigen::VectorXd& free) {
  double acc = instance.num_free() > 0 ? instance.free_objective.dot(free) : 0.0;
  for (const auto& e : instance.block_objective) {
    const auto& x = blocks[e.block];
    acc += e.row == e.col ? e.value * x(e.row, e.col)
                          : e.value * (x(e.row, e.col) + x(e.col, e.row));
  }
  return acc;
}

}  // namespace reachbound
