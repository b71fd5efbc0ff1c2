#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reachbound/certbuild/multiplier_degrees.h"
#include "reachbound/polyalg/monomial_basis.h"
#include "reachbound/polyalg/polynomial.h"
#include "reachbound/problem/problem_spec.h"

namespace reachbound {

/// ∇_t V + c + Σ_i (∂V/∂x_i) f_i over the ambient variables of `spec`.
Polynomial HjbResidual(const Polynomial& v, const ProblemSpec& spec);

enum class DecisionKind { kFree, kSos };

enum class Side { kLower, kUpper };

/// One unknown polynomial of the program.
///
/// Free decisions are coefficient vectors over `basis` starting at
/// `slot` in the free-variable vector. SOS decisions are z^T Q z with z =
/// `basis` and Q the Gram block with index `slot`.
struct DecisionPolynomial {
  std::string name;
  DecisionKind kind{DecisionKind::kFree};
  Side side{Side::kLower};
  std::vector<int> scope;
  MonomialBasis basis;
  int degree{0};
  int slot{0};

  int size() const { return basis.size(); }
};

struct FreeTerm {
  int index;
  double value;
};

/// Coefficient of the upper-triangular Gram entry Q(row, col) in one
/// equality. Off-diagonal coefficients already account for Q(col, row).
struct GramTerm {
  int block;
  int row;
  int col;
  double value;
};

/// Σ free + Σ gram = rhs, matching the coefficient of `monomial` in one
/// polynomial identity.
struct EqualityConstraint {
  std::string identity;
  Monomial monomial;
  std::vector<FreeTerm> free_terms;
  std::vector<GramTerm> gram_terms;
  double rhs{0.0};
};

/// The four identities of the sub/super-value program
///   k0_l = g - V_l(x,T) - s0_l hX
///   k1_l = r(V_l) - s1_l hX - s2_l hY - s3_l t(T-t)
///   k0_u = V_u(x,T) - g - s0_u hX
///   k1_u = -r(V_u) - s1_u hX - s2_u hY - s3_u t(T-t)
/// with r the HJB residual, every s and k SOS, and objective
/// ∫_Ω V_u(x,0) - V_l(x,0) dx.
struct SosProgram {
  ProblemSpec spec;
  DegreeTable degrees;
  std::vector<DecisionPolynomial> decisions;
  std::vector<EqualityConstraint> constraints;
  /// Weights over the free variables.
  Eigen::VectorXd objective;
  int num_free{0};
  int num_blocks{0};

  const DecisionPolynomial& decision(const std::string& name) const;
  bool has_decision(const std::string& name) const;
  /// Gram decisions in block order.
  std::vector<const DecisionPolynomial*> gram_decisions() const;
  /// Identity names in emission order.
  static const std::vector<std::string>& IdentityNames();

  /// Human-readable listing of every decision block and every equality.
  std::string DebugDump() const;
};

/// Objective weight of each coefficient of a V over `basis`: the Ω-moment of
/// its x-part when its t-exponent is zero, else 0.
Eigen::VectorXd BuildObjective(const ProblemSpec& spec, const MonomialBasis& basis);

/// Emits the full program. Throws DegreeAccountingError when an identity
/// produces a monomial outside its k Gram span.
SosProgram BuildSosProgram(const ProblemSpec& spec, const DegreeTable& degrees);
SosProgram BuildSosProgram(const ProblemSpec& spec);

/// Values for every decision: the free vector and one symmetric matrix per
/// Gram block.
struct DecisionValues {
  Eigen::VectorXd free;
  std::vector<Eigen::MatrixXd> grams;
};

/// Polynomial form of every decision, keyed by decision name.
std::map<std::string, Polynomial> ExpandDecisions(const SosProgram& program,
                                                  const DecisionValues& values);

/// Right-hand side of each identity (the defining expression of each k)
/// computed from V and s alone.
std::map<std::string, Polynomial> DefiningPolynomials(
    const SosProgram& program, const std::map<std::string, Polynomial>& expanded);

/// LHS - rhs of every equality row.
Eigen::VectorXd ConstraintResiduals(const SosProgram& program,
                                    const DecisionValues& values);

}  // namespace reachbound
