#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "reachbound/certbuild/multiplier_degrees.h"
#include "reachbound/certbuild/sos_program.h"
#include "reachbound/common/errors.h"
#include "reachbound/polyalg/integrate.h"
#include "reachbound/problem/problem_io.h"
#include "reachbound/problem/trivial_certificate.h"

namespace reachbound {
namespace {

const std::string kProblems = REACHBOUND_PROBLEMS_DIR;

ProblemSpec Load(const std::string& name) {
  return LoadProblemFile(kProblems + "/" + name + ".json");
}

Polynomial Var(const ProblemSpec& s, int i) {
  return Polynomial::Variable(s.variables, i);
}

DecisionValues RandomValues(const SosProgram& prog, std::mt19937_64& rng,
                            bool zero_multipliers = false) {
  std::normal_distribution<double> g;
  DecisionValues v;
  v.free.resize(prog.num_free);
  for (int i = 0; i < prog.num_free; ++i) v.free[i] = g(rng);
  for (const auto* d : prog.gram_decisions()) {
    Eigen::MatrixXd m(d->size(), d->size());
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j) m(i, j) = g(rng);
    }
    if (zero_multipliers && d->name[0] == 's') m.setZero();
    v.grams.push_back(m * m.transpose());
  }
  return v;
}

TEST(HjbResidualTest, ScalarExample) {
  const ProblemSpec s = Load("scalar_xu");
  EXPECT_EQ(HjbResidual(Var(s, 0), s), Var(s, 0) * Var(s, 1));
  EXPECT_TRUE(HjbResidual(Polynomial(s.variables, 3.0), s).is_zero());
}

TEST(HjbResidualTest, TrivialCertificateExpansion) {
  for (const char* name : {"scalar_xu", "vanderpol", "rotation"}) {
    const ProblemSpec s = Load(name);
    const double alpha = 2.5;
    const auto [sub, super] = TrivialCertificates(s, alpha, alpha);
    Polynomial expected = -alpha + s.c;
    for (int i = 0; i < s.n; ++i) expected += s.g.Partial(i) * s.f[i];
    EXPECT_EQ(HjbResidual(sub, s), expected) << name;
  }
}

TEST(HjbResidualTest, LinearInValue) {
  const ProblemSpec s = Load("vanderpol");
  std::mt19937_64 rng(1);
  const MonomialBasis b = MonomialBasis::OverScope(s.num_vars(), {0, 1, 2}, 4);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd c1(b.size()), c2(b.size());
    for (int i = 0; i < b.size(); ++i) {
      c1[i] = g(rng);
      c2[i] = g(rng);
    }
    const Polynomial v1 = FromCoefficients(b, c1, s.variables);
    const Polynomial v2 = FromCoefficients(b, c2, s.variables);
    const Polynomial lhs = HjbResidual(2.0 * v1 - 3.0 * v2, s);
    const Polynomial rhs = 2.0 * HjbResidual(v1, s) - 3.0 * HjbResidual(v2, s);
    for (const auto& [m, c] : (lhs - rhs).terms()) EXPECT_NEAR(c, 0.0, 1e-12);
  }
}

TEST(HjbResidualTest, AffineInValueWithRunningCost) {
  ProblemSpec s = Load("scalar_xu");
  s.mode = ProblemMode::kGeneralOcp;
  s.c = Var(s, 0) * Var(s, 0) + Var(s, 2);
  s = Validate(s);
  const Polynomial v1 = Var(s, 0).Pow(2) * Var(s, 2);
  const Polynomial v2 = Var(s, 0) - Var(s, 2);
  const Polynomial mix = HjbResidual(0.25 * v1 + 0.75 * v2, s);
  EXPECT_EQ(mix, 0.25 * HjbResidual(v1, s) + 0.75 * HjbResidual(v2, s));
}

TEST(MultiplierDegreesTest, ScalarExample) {
  const DegreeTable t = MultiplierDegrees(Load("scalar_xu"));
  EXPECT_EQ(t.field_degree, 2);
  EXPECT_EQ(t.total_degree, 6);
  ASSERT_EQ(t.multipliers.size(), 4u);
  for (const auto& s : t.multipliers) EXPECT_EQ(s.degree, 4) << s.name;
  EXPECT_EQ(t.gram_half_degree(), 3);
}

TEST(MultiplierDegreesTest, SmallestCase) {
  const DegreeTable t = MultiplierDegrees(WithDegree(Load("rotation_fixed"), 2));
  EXPECT_EQ(t.total_degree, 2);
  for (const auto& s : t.multipliers) {
    if (s.name == "s2") {
      EXPECT_FALSE(s.present());
    } else {
      EXPECT_EQ(s.degree, 0) << s.name;
    }
  }
}

TEST(MultiplierDegreesTest, VanDerPolAndRotation) {
  EXPECT_EQ(MultiplierDegrees(Load("vanderpol")).total_degree, 6);
  EXPECT_EQ(MultiplierDegrees(WithDegree(Load("rotation_fixed"), 3)).total_degree, 4);
  EXPECT_EQ(MultiplierDegrees(Load("rotation_fixed")).total_degree, 4);
  EXPECT_EQ(MultiplierDegrees(Load("rotation")).total_degree, 4);
}

TEST(MultiplierDegreesTest, RefusesOversizedPrograms) {
  try {
    MultiplierDegrees(WithDegree(Load("vanderpol"), 12));
    FAIL();
  } catch (const SizingError& e) {
    EXPECT_NE(std::string(e.what()).find("D = 14"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(MultiplierDegrees(WithDegree(Load("vanderpol"), 10)));
}

TEST(MultiplierDegreesTest, CompanionAboveBudgetIsAbsent) {
  ProblemSpec s = WithDegree(Load("rotation_fixed"), 2);
  s.h_x = 100.0 - Var(s, 0).Pow(4);
  const DegreeTable t = MultiplierDegrees(s);
  EXPECT_FALSE(t.multipliers[0].present());
  EXPECT_FALSE(t.multipliers[1].present());
  EXPECT_TRUE(t.multipliers[3].present());
}

TEST(BuildSosProgramTest, ScalarBlockSizes) {
  const SosProgram p = BuildSosProgram(Load("scalar_xu"));
  EXPECT_EQ(p.decision("k1_l").size(), 20);
  EXPECT_EQ(p.decision("k1_u").size(), 20);
  EXPECT_EQ(p.decision("k0_l").size(), 4);
  EXPECT_EQ(p.decision("s0_l").size(), 3);
  for (const char* s : {"s1_l", "s2_l", "s3_l", "s1_u", "s2_u", "s3_u"}) {
    EXPECT_EQ(p.decision(s).size(), 10) << s;
  }
  EXPECT_EQ(p.decision("V_l").size(), 15);
  EXPECT_EQ(p.num_free, 30);
  EXPECT_EQ(p.num_blocks, 12);
  EXPECT_EQ(p.constraints.size(), 2u * (84 + 7));
}

TEST(BuildSosProgramTest, InputMultiplierOmittedWithoutInputSet) {
  const SosProgram p = BuildSosProgram(Load("vanderpol"));
  EXPECT_FALSE(p.has_decision("s2_l"));
  EXPECT_FALSE(p.has_decision("s2_u"));
  EXPECT_EQ(p.decision("k1_l").size(), 20);
  EXPECT_EQ(p.decision("k0_l").size(), 10);
}

TEST(BuildSosProgramTest, OneRowPerMonomialPerIdentity) {
  for (const char* name : {"scalar_xu", "vanderpol", "rotation"}) {
    const SosProgram p = BuildSosProgram(Load(name));
    std::set<std::pair<std::string, Monomial>> seen;
    for (const auto& row : p.constraints) {
      EXPECT_TRUE(seen.insert({row.identity, row.monomial}).second);
    }
    // Every row monomial actually occurs in its k expansion.
    std::mt19937_64 rng(2);
    const auto ex = ExpandDecisions(p, RandomValues(p, rng));
    std::set<std::pair<std::string, Monomial>> occurring;
    for (const auto& id : SosProgram::IdentityNames()) {
      for (const auto& [m, c] : ex.at(id).terms()) occurring.insert({id, m});
    }
    EXPECT_EQ(occurring, seen) << name;
  }
}

TEST(BuildSosProgramTest, TerminalIdentityAtMonomialX) {
  const ProblemSpec s = Load("scalar_xu");
  const SosProgram p = BuildSosProgram(s);
  const Monomial x({1, 0, 0});
  const EqualityConstraint* row = nullptr;
  for (const auto& r : p.constraints) {
    if (r.identity == "k0_l" && r.monomial == x) row = &r;
  }
  ASSERT_NE(row, nullptr);
  EXPECT_DOUBLE_EQ(row->rhs, 1.0);
  // V_l(x, T) picks up every x t^e coefficient with weight T^e = 1.
  const auto& v = p.decision("V_l");
  std::set<int> expected;
  for (int b = 0; b < v.size(); ++b) {
    if (v.basis[b][0] == 1 && v.basis[b][1] == 0) expected.insert(v.slot + b);
  }
  std::set<int> got;
  for (const auto& t : row->free_terms) {
    got.insert(t.index);
    EXPECT_DOUBLE_EQ(t.value, 1.0);
  }
  EXPECT_EQ(got, expected);
  // s0_l * hX contributes through 64 * (Gram entry pairing 1 and x).
  bool saw_multiplier = false;
  for (const auto& t : row->gram_terms) {
    if (t.block == p.decision("s0_l").slot && t.row == 0 && t.col == 1) {
      EXPECT_DOUBLE_EQ(t.value, 2.0 * 64.0);
      saw_multiplier = true;
    }
  }
  EXPECT_TRUE(saw_multiplier);
}

TEST(BuildSosProgramTest, RowsReproduceSymbolicIdentities) {
  for (const char* name : {"scalar_xu", "vanderpol", "rotation", "rotation_fixed"}) {
    const SosProgram p = BuildSosProgram(Load(name));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      const DecisionValues v = RandomValues(p, rng);
      const auto ex = ExpandDecisions(p, v);
      const auto def = DefiningPolynomials(p, ex);
      const Eigen::VectorXd r = ConstraintResiduals(p, v);
      for (size_t i = 0; i < p.constraints.size(); ++i) {
        const auto& row = p.constraints[i];
        const double sym = ex.at(row.identity).coefficient(row.monomial) -
                           def.at(row.identity).coefficient(row.monomial);
        EXPECT_NEAR(r[i], sym, 1e-9 * (1.0 + std::abs(sym))) << name << " " << row.identity;
      }
      // Every defining term is covered by some row.
      for (const auto& id : SosProgram::IdentityNames()) {
        for (const auto& [m, c] : def.at(id).terms()) {
          bool found = false;
          for (const auto& row : p.constraints) {
            found = found || (row.identity == id && row.monomial == m);
          }
          EXPECT_TRUE(found) << id << " " << m.ToString(p.spec.variables);
        }
      }
    }
  }
}

TEST(BuildSosProgramTest, TrivialCertificateMakesTerminalIdentityVanish) {
  const ProblemSpec s = Load("scalar_xu");
  const SosProgram p = BuildSosProgram(s);
  const AlphaEstimate a = EstimateAlphaBounds(s, 8.0, {});
  const auto [sub, super] = TrivialCertificates(s, a.alpha_lower, a.alpha_upper);
  std::map<std::string, Polynomial> ex;
  ex["V_l"] = sub;
  ex["V_u"] = super;
  for (const auto& d : p.decisions) {
    if (d.name[0] == 's') ex[d.name] = Polynomial(s.variables);
  }
  const auto def = DefiningPolynomials(p, ex);
  EXPECT_TRUE(def.at("k0_l").is_zero());
  EXPECT_TRUE(def.at("k0_u").is_zero());
  EXPECT_EQ(def.at("k1_l"), HjbResidual(sub, s));
  EXPECT_EQ(def.at("k1_u"), -HjbResidual(super, s));
}

TEST(BuildSosProgramTest, NegatedDataMirrorsUpperSide) {
  ProblemSpec s = Load("rotation");
  s.mode = ProblemMode::kGeneralOcp;
  s.c = Var(s, 0) * Var(s, 2);
  s = Validate(s);
  ProblemSpec mirrored = s;
  mirrored.g = -s.g;
  mirrored.c = -s.c;
  const SosProgram p = BuildSosProgram(s);
  const SosProgram q = BuildSosProgram(mirrored);
  std::mt19937_64 rng(8);
  const DecisionValues v = RandomValues(q, rng);
  auto lower = ExpandDecisions(q, v);
  std::map<std::string, Polynomial> upper;
  for (const auto& [name, poly] : lower) {
    if (name.ends_with("_l")) {
      const std::string base = name.substr(0, name.size() - 2);
      upper[base + "_u"] = base == "V" ? -poly : poly;
    }
  }
  upper["V_l"] = Polynomial(s.variables);
  for (const auto& d : p.decisions) {
    if (d.name.ends_with("_l") && d.name != "V_l") upper[d.name] = Polynomial(s.variables);
  }
  const auto dq = DefiningPolynomials(q, lower);
  const auto dp = DefiningPolynomials(p, upper);
  for (const char* k : {"k0", "k1"}) {
    const Polynomial diff = dq.at(std::string(k) + "_l") - dp.at(std::string(k) + "_u");
    for (const auto& [m, c] : diff.terms()) EXPECT_NEAR(c, 0.0, 1e-10) << k;
  }
}

TEST(BuildSosProgramTest, UndersizedDegreeTableIsAccountingError) {
  const ProblemSpec s = Load("scalar_xu");
  DegreeTable t = MultiplierDegrees(s);
  t.total_degree = 4;
  EXPECT_THROW(BuildSosProgram(s, t), DegreeAccountingError);
}

TEST(BuildObjectiveTest, Weights) {
  const ProblemSpec vdp = Load("vanderpol");
  const MonomialBasis b = MonomialBasis::OverScope(3, {0, 1, 2}, 4);
  const Eigen::VectorXd w = BuildObjective(vdp, b);
  EXPECT_NEAR(w[*b.IndexOf(Monomial({2, 0, 0}))], 64.0 / 3.0, 1e-12);
  EXPECT_EQ(w[*b.IndexOf(Monomial({2, 0, 1}))], 0.0);
  EXPECT_EQ(w[*b.IndexOf(Monomial({0, 0, 1}))], 0.0);
  const ProblemSpec rot = Load("rotation_fixed");
  EXPECT_DOUBLE_EQ(BuildObjective(rot, b)[0], 36.0);
}

TEST(BuildObjectiveTest, EqualsGapIntegral) {
  for (const char* name : {"scalar_xu", "vanderpol", "rotation"}) {
    const ProblemSpec s = Load(name);
    const SosProgram p = BuildSosProgram(s);
    std::mt19937_64 rng(4);
    BoxDomain domain;
    for (int i = 0; i < s.n; ++i) domain.intervals[i] = s.omega[i];
    domain.fixed[s.time_index()] = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const DecisionValues v = RandomValues(p, rng);
      const auto ex = ExpandDecisions(p, v);
      const double integral = IntegrateOverBox(ex.at("V_u") - ex.at("V_l"), domain);
      EXPECT_NEAR(p.objective.dot(v.free), integral, 1e-10 * (1.0 + std::abs(integral)));
    }
  }
}

TEST(DebugDumpTest, ListsIdentitiesDeterministically) {
  const SosProgram a = BuildSosProgram(Load("scalar_xu"));
  const SosProgram b = BuildSosProgram(Load("scalar_xu"));
  const std::string dump = a.DebugDump();
  EXPECT_EQ(dump, b.DebugDump());
  for (const char* needle : {"identity k0_l", "identity k1_l", "identity k0_u",
                             "identity k1_u", "decision s3_u sos"}) {
    EXPECT_NE(dump.find(needle), std::string::npos) << needle;
  }
}

}  // namespace
}  // namespace reachbound
