#pragma once

#include <compare>
#include <string>
#include <vector>

namespace reachbound {

/// Exponent vector over an ambient variable list.
///
/// Monomials are ordered graded-lexicographically: lower total degree first,
/// ties broken by lexicographic comparison of the exponent vectors. Under this
/// order the two-variable basis of degree 2 reads 1, x2, x1, x2^2, x1*x2, x1^2.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);

  /// The constant monomial over `num_vars` variables.
  static Monomial One(int num_vars);
  /// x_var^power over `num_vars` variables.
  static Monomial Unit(int num_vars, int var, int power = 1);

  int num_vars() const { return static_cast<int>(exponents_.size()); }
  int degree() const { return degree_; }
  int operator[](int i) const { return exponents_[i]; }
  const std::vector<int>& exponents() const { return exponents_; }

  Monomial operator*(const Monomial& other) const;

  /// Places this monomial's exponents at `positions` of a longer exponent
  /// vector of length `num_vars`.
  Monomial Embed(const std::vector<int>& positions, int num_vars) const;

  bool operator==(const Monomial& other) const {
    return exponents_ == other.exponents_;
  }
  std::strong_ordering operator<=>(const Monomial& other) const;

  std::string ToString(const std::vector<std::string>& names) const;

 private:
  std::vector<int> exponents_;
  int degree_{0};
};

}  // namespace reachbound
