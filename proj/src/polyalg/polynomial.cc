#include "reachbound/polyalg/polynomial.h"

#include <cmath>
#include <sstream>

#include "reachbound/common/errors.h"

namespace reachbound {
namespace {

// Positions of `sub` inside `super` when `sub` is an ordered subsequence.
bool SubsequencePositions(const std::vector<std::string>& sub,
                          const std::vector<std::string>& super,
                          std::vector<int>* positions) {
  positions->clear();
  size_t j = 0;
  for (const auto& name : sub) {
    while (j < super.size() && super[j] != name) ++j;
    if (j == super.size()) return false;
    positions->push_back(static_cast<int>(j));
    ++j;
  }
  return true;
}

std::string JoinNames(const std::vector<std::string>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s + "]";
}

double IntPow(double x, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<std::string> UnifyVariables(const std::vector<std::string>& a,
                                        const std::vector<std::string>& b) {
  if (a == b) return a;
  std::vector<int> pos;
  if (SubsequencePositions(a, b, &pos)) return b;
  if (SubsequencePositions(b, a, &pos)) return a;
  throw StructuralError("incompatible variable sets " + JoinNames(a) + " and " +
                        JoinNames(b));
}

Polynomial::Polynomial(std::vector<std::string> variables, double constant)
    : variables_(std::move(variables)) {
  AddTerm(Monomial::One(num_vars()), constant);
}

Polynomial::Polynomial(std::vector<std::string> variables,
                       const TermMap& terms)
    : variables_(std::move(variables)) {
  for (const auto& [m, c] : terms) {
    if (m.num_vars() != num_vars()) {
      throw StructuralError("term arity does not match variable list");
    }
    AddTerm(m, c);
  }
}

Polynomial Polynomial::Variable(const std::vector<std::string>& variables,
                                int index) {
  return FromMonomial(variables,
                      Monomial::Unit(static_cast<int>(variables.size()), index),
                      1.0);
}

Polynomial Polynomial::FromMonomial(const std::vector<std::string>& variables,
                                    const Monomial& monomial,
                                    double coefficient) {
  Polynomial p(variables);
  p.AddTerm(monomial, coefficient);
  return p;
}

double Polynomial::coefficient(const Monomial& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? 0.0 : it->second;
}

int Polynomial::degree() const {
  // Graded order: the last term has maximal degree.
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

int Polynomial::degree_in(int var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

void Polynomial::AddTerm(const Monomial& monomial, double coefficient) {
  if (monomial.num_vars() != num_vars()) {
    throw StructuralError("term arity does not match variable list");
  }
  auto it = terms_.find(monomial);
  if (it == terms_.end()) {
    if (std::abs(coefficient) >= kDropTolerance) terms_.emplace(monomial, coefficient);
    return;
  }
  it->second += coefficient;
  if (std::abs(it->second) < kDropTolerance) terms_.erase(it);
}

void Polynomial::Prune() {
  std::erase_if(terms_, [](const auto& kv) {
    return std::abs(kv.second) < kDropTolerance;
  });
}

Polynomial Polynomial::EmbedInto(
    const std::vector<std::string>& variables) const {
  if (variables == variables_) return *this;
  std::vector<int> pos;
  if (!SubsequencePositions(variables_, variables, &pos)) {
    throw StructuralError("cannot embed " + JoinNames(variables_) + " into " +
                          JoinNames(variables));
  }
  Polynomial out(variables);
  const int n = static_cast<int>(variables.size());
  for (const auto& [m, c] : terms_) out.terms_.emplace(m.Embed(pos, n), c);
  return out;
}

double Polynomial::Evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != num_vars()) {
    throw InputError("evaluation point has " + std::to_string(point.size()) +
                     " entries, polynomial has " + std::to_string(num_vars()) +
                     " variables");
  }
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = c;
    for (int i = 0; i < num_vars(); ++i) {
      if (m[i] > 0) term *= IntPow(point[i], m[i]);
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::Partial(int var) const {
  if (var < 0 || var >= num_vars()) {
    throw InputError("partial derivative variable out of range");
  }
  Polynomial out(variables_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    std::vector<int> e = m.exponents();
    const int power = e[var]--;
    out.AddTerm(Monomial(std::move(e)), c * power);
  }
  return out;
}

Polynomial Polynomial::Substitute(int var, double value) const {
  if (var < 0 || var >= num_vars()) {
    throw InputError("substitution variable out of range");
  }
  Polynomial out(variables_);
  for (const auto& [m, c] : terms_) {
    std::vector<int> e = m.exponents();
    const int power = e[var];
    e[var] = 0;
    out.AddTerm(Monomial(std::move(e)), c * IntPow(value, power));
  }
  return out;
}

Polynomial Polynomial::Pow(int power) const {
  if (power < 0) throw InputError("negative polynomial power");
  Polynomial result(variables_, 1.0);
  for (int i = 0; i < power; ++i) result *= *this;
  return result;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  const auto vars = UnifyVariables(variables_, other.variables_);
  if (vars != variables_) *this = EmbedInto(vars);
  const Polynomial& rhs =
      other.variables_ == vars ? other : other.EmbedInto(vars);
  if (&rhs == this) {
    for (auto& [m, c] : terms_) c *= 2.0;
    Prune();
    return *this;
  }
  for (const auto& [m, c] : rhs.terms_) AddTerm(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  return *this += -other;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const auto vars = UnifyVariables(a.variables_, b.variables_);
  const Polynomial ea = a.EmbedInto(vars);
  const Polynomial eb = b.EmbedInto(vars);
  Polynomial out(vars);
  for (const auto& [ma, ca] : ea.terms_) {
    for (const auto& [mb, cb] : eb.terms_) out.terms_[ma * mb] += ca * cb;
  }
  out.Prune();
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator+=(double value) {
  AddTerm(Monomial::One(num_vars()), value);
  return *this;
}

Polynomial& Polynomial::operator*=(double value) {
  for (auto& [m, c] : terms_) c *= value;
  Prune();
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.variables_ == b.variables_) return a.terms_ == b.terms_;
  std::vector<std::string> vars;
  try {
    vars = UnifyVariables(a.variables_, b.variables_);
  } catch (const StructuralError&) {
    return false;
  }
  return a.EmbedInto(vars).terms_ == b.EmbedInto(vars).terms_;
}

std::string Polynomial::ToString() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool constant = m.degree() == 0;
    double shown = c;
    if (!first) {
      out << (c < 0 ? " - " : " + ");
      shown = std::abs(c);
    }
    first = false;
    if (constant) {
      out << shown;
    } else {
      if (shown == -1.0) {
        out << '-';
      } else if (shown != 1.0) {
        out << shown << '*';
      }
      out << m.ToString(variables_);
    }
  }
  return out.str();
}

std::vector<Polynomial> Gradient(const Polynomial& p,
                                 std::span<const int> vars) {
  std::vector<Polynomial> g;
  g.reserve(vars.size());
  for (int v : vars) g.push_back(p.Partial(v));
  return g;
}

}  // namespace reachbound
