#include "reachbound/polyalg/monomial_basis.h"

#include <algorithm>
#include <functional>

#include "reachbound/common/errors.h"

namespace reachbound {

long long Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

MonomialBasis MonomialBasis::Full(int num_vars, int max_degree) {
  std::vector<int> scope(num_vars);
  for (int i = 0; i < num_vars; ++i) scope[i] = i;
  return OverScope(num_vars, std::move(scope), max_degree);
}

MonomialBasis MonomialBasis::OverScope(int ambient_vars, std::vector<int> scope,
                                       int max_degree) {
  if (max_degree < 0) throw InputError("basis degree must be nonnegative");
  for (int v : scope) {
    if (v < 0 || v >= ambient_vars) throw InputError("basis scope out of range");
  }
  MonomialBasis basis;
  basis.ambient_vars_ = ambient_vars;
  basis.max_degree_ = max_degree;
  basis.scope_ = std::move(scope);

  std::vector<int> e(ambient_vars, 0);
  const int k = static_cast<int>(basis.scope_.size());
  std::function<void(int, int)> recurse = [&](int slot, int remaining) {
    if (slot == k) {
      basis.entries_.emplace_back(e);
      return;
    }
    for (int p = 0; p <= remaining; ++p) {
      e[basis.scope_[slot]] = p;
      recurse(slot + 1, remaining - p);
    }
    e[basis.scope_[slot]] = 0;
  };
  recurse(0, max_degree);
  std::sort(basis.entries_.begin(), basis.entries_.end());
  for (int i = 0; i < basis.size(); ++i) basis.index_.emplace(basis.entries_[i], i);
  return basis;
}

std::optional<int> MonomialBasis::IndexOf(const Monomial& monomial) const {
  auto it = index_.find(monomial);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Eigen::VectorXd CoefficientVector(const Polynomial& p,
                                  const MonomialBasis& basis) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(basis.size());
  if (p.is_zero()) return v;
  if (p.num_vars() != basis.ambient_vars()) {
    throw StructuralError("polynomial and basis have different variable counts");
  }
  for (const auto& [m, c] : p.terms()) {
    auto idx = basis.IndexOf(m);
    if (!idx) {
      throw DegreeOverflowError("monomial " + m.ToString(p.variables()) +
                                " lies outside the basis");
    }
    v[*idx] = c;
  }
  return v;
}

Polynomial FromCoefficients(const MonomialBasis& basis,
                            const Eigen::Ref<const Eigen::VectorXd>& coefficients,
                            const std::vector<std::string>& variables) {
  if (coefficients.size() != basis.size()) {
    throw InputError("coefficient vector length does not match basis");
  }
  if (static_cast<int>(variables.size()) != basis.ambient_vars()) {
    throw StructuralError("variable list does not match basis arity");
  }
  Polynomial p(variables);
  for (int i = 0; i < basis.size(); ++i) p.AddTerm(basis[i], coefficients[i]);
  return p;
}

}  // namespace reachbound
