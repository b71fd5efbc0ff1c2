#pragma once

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "reachbound/polyalg/monomial.h"
#include "reachbound/polyalg/polynomial.h"

namespace reachbound {

/// Graded-lex sorted list of every monomial of total degree <= max_degree in a
/// subset ("scope") of an ambient variable list. Variables outside the scope
/// carry zero exponents.
class MonomialBasis {
 public:
  MonomialBasis() = default;

  /// All monomials in `num_vars` variables of degree <= `max_degree`. The
  /// entry count is binomial(num_vars + max_degree, max_degree).
  static MonomialBasis Full(int num_vars, int max_degree);
  /// All monomials in the ambient variables listed in `scope`.
  static MonomialBasis OverScope(int ambient_vars, std::vector<int> scope,
                                 int max_degree);

  const std::vector<Monomial>& entries() const { return entries_; }
  const Monomial& operator[](int i) const { return entries_[i]; }
  int size() const { return static_cast<int>(entries_.size()); }
  int max_degree() const { return max_degree_; }
  int ambient_vars() const { return ambient_vars_; }
  const std::vector<int>& scope() const { return scope_; }

  std::optional<int> IndexOf(const Monomial& monomial) const;

 private:
  std::vector<Monomial> entries_;
  std::map<Monomial, int> index_;
  std::vector<int> scope_;
  int ambient_vars_{0};
  int max_degree_{0};
};

/// Coordinates of `p` in `basis`, zero-padded. Throws DegreeOverflowError
/// naming the first term outside the basis.
Eigen::VectorXd CoefficientVector(const Polynomial& p,
                                  const MonomialBasis& basis);

/// Inverse of CoefficientVector.
Polynomial FromCoefficients(const MonomialBasis& basis,
                            const Eigen::Ref<const Eigen::VectorXd>& coefficients,
                            const std::vector<std::string>& variables);

/// binomial(n, k) for small arguments.
long long Binomial(int n, int k);

}  // namespace reachbound
