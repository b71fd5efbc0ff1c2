#include "reachbound/certbuild/sos_program.h"

#include <cmath>
#include <sstream>
#include <tuple>

#include "reachbound/common/errors.h"
#include "reachbound/polyalg/integrate.h"

namespace reachbound {
namespace {

// ∇_t v + ∇_x v^T f, i.e. the HJB residual without the running cost.
Polynomial FieldDerivative(const Polynomial& v, const ProblemSpec& spec) {
  const Polynomial w = v.EmbedInto(spec.variables);
  Polynomial out = w.Partial(spec.time_index());
  for (int i = 0; i < spec.n; ++i) out += w.Partial(i) * spec.f[i];
  return out;
}

Polynomial TimeWindow(const ProblemSpec& spec) {
  const Polynomial t = Polynomial::Variable(spec.variables, spec.time_index());
  return t * (spec.T - t);
}

const Polynomial& CompanionPolynomial(const ProblemSpec& spec, Companion c,
                                      const Polynomial& window) {
  switch (c) {
    case Companion::kStateRegion: return spec.h_x;
    case Companion::kInputSet: return spec.h_y;
    case Companion::kTimeWindow: return window;
  }
  return window;
}

const char* SideSuffix(Side side) { return side == Side::kLower ? "_l" : "_u"; }

// Collects the monomial-wise rows of one identity over the Gram span of its k.
class IdentityRows {
 public:
  IdentityRows(std::string name, MonomialBasis span,
               const std::vector<std::string>& variables)
      : name_(std::move(name)),
        span_(std::move(span)),
        variables_(variables),
        free_(span_.size()),
        gram_(span_.size()),
        rhs_(span_.size(), 0.0) {}

  void AddFree(const Monomial& mu, int index, double value) {
    free_[Row(mu)][index] += value;
  }

  // Adds sign * companion * (z^T Q z) for the Gram decision `block`.
  void AddGram(const DecisionPolynomial& block, const Polynomial& companion,
               double sign) {
    const MonomialBasis& z = block.basis;
    for (int a = 0; a < z.size(); ++a) {
      for (int b = a; b < z.size(); ++b) {
        const Monomial zz = z[a] * z[b];
        const double mult = a == b ? sign : 2.0 * sign;
        for (const auto& [nu, coef] : companion.terms()) {
          gram_[Row(zz * nu)][{block.slot, a, b}] += mult * coef;
        }
      }
    }
  }

  void AddRhs(const Polynomial& p) {
    for (const auto& [mu, coef] : p.terms()) rhs_[Row(mu)] += coef;
  }

  void Emit(std::vector<EqualityConstraint>* out) const {
    for (int r = 0; r < span_.size(); ++r) {
      EqualityConstraint row;
      row.identity = name_;
      row.monomial = span_[r];
      for (const auto& [idx, v] : free_[r]) {
        if (v != 0.0) row.free_terms.push_back({idx, v});
      }
      for (const auto& [key, v] : gram_[r]) {
        if (v != 0.0) {
          row.gram_terms.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v});
        }
      }
      row.rhs = rhs_[r];
      out->push_back(std::move(row));
    }
  }

 private:
  int Row(const Monomial& mu) const {
    const auto idx = span_.IndexOf(mu);
    if (!idx) {
      throw DegreeAccountingError("identity " + name_ + " produced monomial " +
                                  mu.ToString(variables_) +
                                  " outside the Gram span of its SOS remainder");
    }
    return *idx;
  }

  std::string name_;
  MonomialBasis span_;
  std::vector<std::string> variables_;
  std::vector<std::map<int, double>> free_;
  std::vector<std::map<std::tuple<int, int, int>, double>> gram_;
  std::vector<double> rhs_;
};

}  // namespace

Polynomial HjbResidual(const Polynomial& v, const ProblemSpec& spec) {
  return FieldDerivative(v, spec) + spec.c;
}

const DecisionPolynomial& SosProgram::decision(const std::string& name) const {
  for (const auto& d : decisions) {
    if (d.name == name) return d;
  }
  throw std::out_of_range("no decision named " + name);
}

bool SosProgram::has_decision(const std::string& name) const {
  for (const auto& d : decisions) {
    if (d.name == name) return true;
  }
  return false;
}

std::vector<const DecisionPolynomial*> SosProgram::gram_decisions() const {
  std::vector<const DecisionPolynomial*> out(num_blocks, nullptr);
  for (const auto& d : decisions) {
    if (d.kind == DecisionKind::kSos) out[d.slot] = &d;
  }
  return out;
}

const std::vector<std::string>& SosProgram::IdentityNames() {
  static const std::vector<std::string> names{"k0_l", "k1_l", "k0_u", "k1_u"};
  return names;
}

Eigen::VectorXd BuildObjective(const ProblemSpec& spec, const MonomialBasis& basis) {
  BoxDomain omega;
  for (int i = 0; i < spec.n; ++i) omega.intervals[i] = spec.omega[i];
  Eigen::VectorXd w = Eigen::VectorXd::Zero(basis.size());
  for (int k = 0; k < basis.size(); ++k) {
    const Monomial& mono = basis[k];
    if (mono[spec.time_index()] != 0) continue;
    w[k] = BoxMoment(mono, omega);
  }
  return w;
}

SosProgram BuildSosProgram(const ProblemSpec& spec) {
  return BuildSosProgram(spec, MultiplierDegrees(spec));
}

SosProgram BuildSosProgram(const ProblemSpec& spec, const DegreeTable& degrees) {
  SosProgram prog;
  prog.spec = spec;
  prog.degrees = degrees;
  const int nv = spec.num_vars();
  const int ti = spec.time_index();
  const int total = degrees.total_degree;
  const std::vector<int> x_scope = spec.state_indices();
  std::vector<int> xt_scope = x_scope;
  xt_scope.push_back(ti);
  std::vector<int> xut_scope(nv);
  for (int i = 0; i < nv; ++i) xut_scope[i] = i;

  const MonomialBasis v_basis = MonomialBasis::OverScope(nv, xt_scope, spec.d);
  const Polynomial window = TimeWindow(spec);

  int block = 0;
  for (Side side : {Side::kLower, Side::kUpper}) {
    const std::string sfx = SideSuffix(side);
    prog.decisions.push_back({"V" + sfx, DecisionKind::kFree, side, xt_scope,
                              v_basis, spec.d, prog.num_free});
    prog.num_free += v_basis.size();
    for (const auto& s : degrees.multipliers) {
      if (!s.present()) continue;
      const auto& scope = s.x_only ? x_scope : xut_scope;
      prog.decisions.push_back({s.name + sfx, DecisionKind::kSos, side, scope,
                                MonomialBasis::OverScope(nv, scope, s.degree / 2),
                                s.degree, block++});
    }
    for (int k = 0; k < 2; ++k) {
      const auto& scope = k == 0 ? x_scope : xut_scope;
      prog.decisions.push_back({"k" + std::to_string(k) + sfx, DecisionKind::kSos, side,
                                scope,
                                MonomialBasis::OverScope(nv, scope, degrees.gram_half_degree()),
                                total, block++});
    }
  }
  prog.num_blocks = block;

  for (Side side : {Side::kLower, Side::kUpper}) {
    const std::string sfx = SideSuffix(side);
    // The upper side is the lower side with f, c, g negated in sign: its
    // identities flip the sign of every V and data term.
    const double sv = side == Side::kLower ? 1.0 : -1.0;
    const DecisionPolynomial& v = prog.decision("V" + sfx);

    IdentityRows k0("k0" + sfx, MonomialBasis::OverScope(nv, x_scope, total),
                    spec.variables);
    for (int b = 0; b < v.size(); ++b) {
      const Monomial& mono = v.basis[b];
      std::vector<int> e = mono.exponents();
      const int tp = e[ti];
      e[ti] = 0;
      k0.AddFree(Monomial(e), v.slot + b, sv * std::pow(spec.T, tp));
    }
    IdentityRows k1("k1" + sfx, MonomialBasis::OverScope(nv, xut_scope, total),
                    spec.variables);
    for (int b = 0; b < v.size(); ++b) {
      const Polynomial r =
          FieldDerivative(Polynomial::FromMonomial(spec.variables, v.basis[b], 1.0), spec);
      for (const auto& [mu, coef] : r.terms()) k1.AddFree(mu, v.slot + b, -sv * coef);
    }
    for (const auto& s : degrees.multipliers) {
      if (!s.present()) continue;
      const auto& h = CompanionPolynomial(spec, s.companion, window);
      (s.x_only ? k0 : k1).AddGram(prog.decision(s.name + sfx), h, 1.0);
    }
    const Polynomial one(spec.variables, 1.0);
    k0.AddGram(prog.decision("k0" + sfx), one, 1.0);
    k1.AddGram(prog.decision("k1" + sfx), one, 1.0);
    k0.AddRhs(sv * spec.g);
    k1.AddRhs(sv * spec.c);
    k0.Emit(&prog.constraints);
    k1.Emit(&prog.constraints);
  }

  const Eigen::VectorXd w = BuildObjective(spec, v_basis);
  prog.objective = Eigen::VectorXd::Zero(prog.num_free);
  prog.objective.segment(prog.decision("V_l").slot, w.size()) = -w;
  prog.objective.segment(prog.decision("V_u").slot, w.size()) = w;
  return prog;
}

std::map<std::string, Polynomial> ExpandDecisions(const SosProgram& program,
                                                  const DecisionValues& values) {
  const auto& vars = program.spec.variables;
  std::map<std::string, Polynomial> out;
  for (const auto& d : program.decisions) {
    if (d.kind == DecisionKind::kFree) {
      out[d.name] = FromCoefficients(d.basis, values.free.segment(d.slot, d.size()), vars);
      continue;
    }
    const Eigen::MatrixXd& q = values.grams.at(d.slot);
    Polynomial p(vars);
    for (int a = 0; a < d.size(); ++a) {
      for (int b = a; b < d.size(); ++b) {
        const double v = a == b ? q(a, a) : q(a, b) + q(b, a);
        if (v != 0.0) p.AddTerm(d.basis[a] * d.basis[b], v);
      }
    }
    out[d.name] = std::move(p);
  }
  return out;
}

std::map<std::string, Polynomial> DefiningPolynomials(
    const SosProgram& program, const std::map<std::string, Polynomial>& expanded) {
  const ProblemSpec& spec = program.spec;
  const Polynomial window = TimeWindow(spec);
  std::map<std::string, Polynomial> out;
  for (Side side : {Side::kLower, Side::kUpper}) {
    const std::string sfx = SideSuffix(side);
    const Polynomial& v = expanded.at("V" + sfx);
    Polynomial k0 = v.Substitute(spec.time_index(), spec.T) - spec.g;
    Polynomial k1 = HjbResidual(v, spec);
    if (side == Side::kLower) {
      k0 = -k0;
    } else {
      k1 = -k1;
    }
    for (const auto& s : program.degrees.multipliers) {
      if (!s.present()) continue;
      const Polynomial term =
          expanded.at(s.name + sfx) * CompanionPolynomial(spec, s.companion, window);
      (s.x_only ? k0 : k1) -= term;
    }
    out["k0" + sfx] = std::move(k0);
    out["k1" + sfx] = std::move(k1);
  }
  return out;
}

Eigen::VectorXd ConstraintResiduals(const SosProgram& program,
                                    const DecisionValues& values) {
  Eigen::VectorXd r(program.constraints.size());
  for (size_t i = 0; i < program.constraints.size(); ++i) {
    const auto& row = program.constraints[i];
    double acc = -row.rhs;
    for (const auto& t : row.free_terms) acc += t.value * values.free[t.index];
    for (const auto& t : row.gram_terms) acc += t.value * values.grams[t.block](t.row, t.col);
    r[i] = acc;
  }
  return r;
}

std::string SosProgram::DebugDump() const {
  std::ostringstream os;
  os.precision(17);
  const auto& vars = spec.variables;
  os << "program n=" << spec.n << " m=" << spec.m << " T=" << spec.T
     << " d=" << spec.d << " D=" << degrees.total_degree << "\n";
  os << "free variables " << num_free << ", gram blocks " << num_blocks
     << ", equalities " << constraints.size() << "\n";
  for (const auto& d : decisions) {
    os << "decision " << d.name << " "
       << (d.kind == DecisionKind::kFree ? "free" : "sos") << " scope(";
    for (size_t i = 0; i < d.scope.size(); ++i) {
      os << (i ? "," : "") << vars[d.scope[i]];
    }
    os << ") degree " << d.degree << " "
       << (d.kind == DecisionKind::kFree ? "coefficients " : "gram ") << d.size()
       << (d.kind == DecisionKind::kFree ? " offset " : " block ") << d.slot << "\n";
  }
  const auto grams = gram_decisions();
  auto free_name = [&](int idx) {
    for (const auto& d : decisions) {
      if (d.kind == DecisionKind::kFree && idx >= d.slot && idx < d.slot + d.size()) {
        return d.name + "[" + d.basis[idx - d.slot].ToString(vars) + "]";
      }
    }
    return std::string("?");
  };
  std::string current;
  for (const auto& row : constraints) {
    if (row.identity != current) {
      current = row.identity;
      os << "identity " << current << "\n";
    }
    os << "  [" << row.monomial.ToString(vars) << "]";
    for (const auto& t : row.free_terms) os << " " << (t.value >= 0 ? "+" : "") << t.value << "*" << free_name(t.index);
    for (const auto& t : row.gram_terms) {
      os << " " << (t.value >= 0 ? "+" : "") << t.value << "*" << grams[t.block]->name
         << "(" << t.row << "," << t.col << ")";
    }
    os << " = " << row.rhs << "\n";
  }
  return os.str();
}

}  // namespace reachbound
