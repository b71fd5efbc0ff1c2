#include "reachbound/polyalg/integrate.h"

#include <cmath>

#include "reachbound/common/errors.h"

namespace reachbound {
namespace {

void CheckInterval(int var, const Interval& iv) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
    throw InputError("unbounded integration interval for variable " +
                     std::to_string(var));
  }
  if (iv.lo > iv.hi) {
    throw InputError("inverted integration interval for variable " +
                     std::to_string(var));
  }
}

}  // namespace

double BoxMoment(const Monomial& monomial, const BoxDomain& domain) {
  double moment = 1.0;
  for (int i = 0; i < monomial.num_vars(); ++i) {
    const int e = monomial[i];
    if (auto f = domain.fixed.find(i); f != domain.fixed.end()) {
      moment *= std::pow(f->second, e);
      continue;
    }
    auto it = domain.intervals.find(i);
    if (it == domain.intervals.end()) {
      if (e == 0) continue;
      throw InputError("variable " + std::to_string(i) +
                       " is neither integrated nor fixed");
    }
    const Interval& iv = it->second;
    moment *= (std::pow(iv.hi, e + 1) - std::pow(iv.lo, e + 1)) / (e + 1);
  }
  return moment;
}

double IntegrateOverBox(const Polynomial& p, const BoxDomain& domain) {
  for (const auto& [var, iv] : domain.intervals) {
    if (domain.fixed.contains(var)) continue;
    CheckInterval(var, iv);
  }
  for (int v = 0; v < p.num_vars(); ++v) {
    if (!p.depends_on(v)) continue;
    if (!domain.intervals.contains(v) && !domain.fixed.contains(v)) {
      throw InputError("variable " + p.variables()[v] +
                       " has no integration interval");
    }
  }
  if (p.is_zero()) return 0.0;
  double sum = 0.0;
  for (const auto& [m, c] : p.terms()) sum += c * BoxMoment(m, domain);
  return sum;
}

double IntegrateOverBox(const Polynomial& p, std::span<const Interval> box) {
  if (static_cast<int>(box.size()) != p.num_vars()) {
    throw InputError("box dimension does not match polynomial variables");
  }
  BoxDomain domain;
  for (int i = 0; i < p.num_vars(); ++i) domain.intervals[i] = box[i];
  return IntegrateOverBox(p, domain);
}

}  // namespace reachbound
