#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "reachbound/polyalg/monomial.h"

namespace reachbound {

/// Sparse multivariate polynomial with double coefficients over a named,
/// ordered variable list.
///
/// The term map is kept canonical: no stored coefficient has magnitude below
/// kDropTolerance. Binary operations accept operands whose variable lists are
/// equal or where one list is an ordered subsequence of the other; the smaller
/// operand is embedded with zero exponents. Anything else throws
/// StructuralError.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, double>;
  static constexpr double kDropTolerance = 1e-14;

  /// The zero polynomial over no variables; embeds into any variable list.
  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> variables, double constant = 0.0);
  Polynomial(std::vector<std::string> variables, const TermMap& terms);

  /// The polynomial x_index.
  static Polynomial Variable(const std::vector<std::string>& variables,
                             int index);
  static Polynomial FromMonomial(const std::vector<std::string>& variables,
                                 const Monomial& monomial, double coefficient);

  const std::vector<std::string>& variables() const { return variables_; }
  int num_vars() const { return static_cast<int>(variables_.size()); }
  const TermMap& terms() const { return terms_; }
  /// Coefficient of `monomial`, 0 when absent.
  double coefficient(const Monomial& monomial) const;
  bool is_zero() const { return terms_.empty(); }

  /// Maximum total degree over stored terms; 0 for the zero polynomial.
  int degree() const;
  /// Maximum exponent of variable `var`.
  int degree_in(int var) const;
  /// True when some stored term has a positive exponent in `var`.
  bool depends_on(int var) const { return degree_in(var) > 0; }

  /// Adds `coefficient * monomial`, keeping the map canonical.
  void AddTerm(const Monomial& monomial, double coefficient);

  /// Re-expresses this polynomial over a superset variable list. Throws
  /// StructuralError when this list is not a subsequence of `variables`.
  Polynomial EmbedInto(const std::vector<std::string>& variables) const;

  double Evaluate(std::span<const double> point) const;

  /// Formal partial derivative with respect to variable `var`.
  Polynomial Partial(int var) const;
  /// Replaces variable `var` by the constant `value`. The variable list is
  /// unchanged; the exponent of `var` becomes zero in every term.
  Polynomial Substitute(int var, double value) const;
  Polynomial Pow(int power) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator+=(double value);
  Polynomial& operator*=(double value);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator+(Polynomial a, double b) { return a += b; }
  friend Polynomial operator+(double a, Polynomial b) { return b += a; }
  friend Polynomial operator-(Polynomial a, double b) { return a += -b; }
  friend Polynomial operator-(double a, const Polynomial& b) { return -b + a; }
  friend Polynomial operator*(Polynomial a, double b) { return a *= b; }
  friend Polynomial operator*(double a, Polynomial b) { return b *= a; }

  /// Equal iff the variable lists are compatible and the canonical term maps
  /// coincide after embedding.
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string ToString() const;

 private:
  void Prune();

  std::vector<std::string> variables_;
  TermMap terms_;
};

/// Componentwise partial derivatives with respect to `vars`.
std::vector<Polynomial> Gradient(const Polynomial& p, std::span<const int> vars);

/// Returns the variable list both operands embed into, or throws
/// StructuralError.
std::vector<std::string> UnifyVariables(const std::vector<std::string>& a,
                                        const std::vector<std::string>& b);

}  // namespace reachbound
