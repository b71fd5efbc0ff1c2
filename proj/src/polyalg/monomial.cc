#include "reachbound/polyalg/monomial.h"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "reachbound/common/errors.h"

namespace reachbound {

Monomial::Monomial(std::vector<int> exponents)
    : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw InputError("monomial exponents must be nonnegative");
  }
  degree_ = std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

Monomial Monomial::One(int num_vars) {
  return Monomial(std::vector<int>(num_vars, 0));
}

Monomial Monomial::Unit(int num_vars, int var, int power) {
  std::vector<int> e(num_vars, 0);
  e.at(var) = power;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.num_vars() != num_vars()) {
    throw StructuralError("monomial product over different variable counts");
  }
  std::vector<int> e(exponents_);
  for (int i = 0; i < num_vars(); ++i) e[i] += other.exponents_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::Embed(const std::vector<int>& positions,
                         int num_vars) const {
  std::vector<int> e(num_vars, 0);
  for (int i = 0; i < this->num_vars(); ++i) e.at(positions.at(i)) = exponents_[i];
  return Monomial(std::move(e));
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (degree_ != other.degree_) return degree_ <=> other.degree_;
  return exponents_ <=> other.exponents_;
}

std::string Monomial::ToString(const std::vector<std::string>& names) const {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < num_vars(); ++i) {
    if (exponents_[i] == 0) continue;
    if (!first) out << '*';
    first = false;
    out << (i < static_cast<int>(names.size()) ? names[i]
                                               : "v" + std::to_string(i));
    if (exponents_[i] > 1) out << '^' << exponents_[i];
  }
  if (first) out << '1';
  return out.str();
}

}  // namespace reachbound
