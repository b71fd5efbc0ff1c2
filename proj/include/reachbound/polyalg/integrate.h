#pragma once

#include <map>
#include <span>

#include "reachbound/polyalg/polynomial.h"

namespace reachbound {

struct Interval {
  double lo{0.0};
  double hi{0.0};
  double width() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Integration domain: variables in `intervals` are integrated over their
/// interval, variables in `fixed` are substituted first. Any other variable
/// must not occur in the integrand.
struct BoxDomain {
  std::map<int, Interval> intervals;
  std::map<int, double> fixed;
};

/// ∫ x^alpha over a box, computed as the product of closed-form 1D moments.
double BoxMoment(const Monomial& monomial, const BoxDomain& domain);

/// Exact integral of `p` over `domain`; linear in the coefficients of `p`.
/// Throws InputError for inverted or non-finite intervals and for variables
/// of `p` that are neither integrated nor fixed.
double IntegrateOverBox(const Polynomial& p, const BoxDomain& domain);

/// Convenience overload integrating every variable of `p` over `box`.
double IntegrateOverBox(const Polynomial& p, std::span<const Interval> box);

}  // namespace reachbound
