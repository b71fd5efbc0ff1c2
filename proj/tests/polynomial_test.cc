#include <cmath>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "reachbound/common/errors.h"
#include "reachbound/polyalg/integrate.h"
#include "reachbound/polyalg/monomial_basis.h"
#include "reachbound/polyalg/poly_json.h"
#include "reachbound/polyalg/polynomial.h"
#include "test_util.h"

namespace reachbound {
namespace {

using test::RandomPolynomial;
using test::Vars;

Polynomial X(const std::vector<std::string>& vars, int i) {
  return Polynomial::Variable(vars, i);
}

TEST(PolynomialTest, AddCancels) {
  const auto v = Vars(1);
  const Polynomial x = X(v, 0);
  EXPECT_EQ((x + 1.0) + (x - 1.0), 2.0 * x);
  EXPECT_EQ((x + 1.0) - (x + 1.0), Polynomial(v));
  EXPECT_TRUE(((x + 1.0) - (x + 1.0)).is_zero());
}

TEST(PolynomialTest, AddZeroIsIdentity) {
  std::mt19937_64 rng(1);
  const Polynomial p = RandomPolynomial(rng, 2, 4);
  EXPECT_EQ(p + Polynomial(p.variables()), p);
  EXPECT_EQ(p + Polynomial(), p);
}

TEST(PolynomialTest, SquaresOfTwoStates) {
  const auto v = Vars(2);
  const Polynomial g = X(v, 0).Pow(2) + X(v, 1).Pow(2);
  EXPECT_EQ(g.terms().size(), 2u);
  EXPECT_DOUBLE_EQ(g.coefficient(Monomial({2, 0})), 1.0);
  EXPECT_DOUBLE_EQ(g.coefficient(Monomial({0, 2})), 1.0);
  EXPECT_EQ(g.degree(), 2);
}

TEST(PolynomialTest, MultiplyExamples) {
  const std::vector<std::string> v{"x"};
  const Polynomial x = X(v, 0);
  EXPECT_EQ((x - 1.0) * (x + 1.0), x * x - 1.0);

  const std::vector<std::string> u{"u"};
  const Polynomial uu = X(u, 0);
  EXPECT_EQ((uu + 2.0) * (2.0 - uu), 4.0 - uu * uu);

  const std::vector<std::string> t{"t"};
  const Polynomial tt = X(t, 0);
  EXPECT_EQ(tt * (1.0 - tt), tt - tt * tt);
}

TEST(PolynomialTest, MultiplyDegreeAdds) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const Polynomial a = RandomPolynomial(rng, 3, 3);
    const Polynomial b = RandomPolynomial(rng, 3, 3);
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
  }
}

TEST(PolynomialTest, ZeroPolynomialHasDegreeZero) {
  EXPECT_EQ(Polynomial(Vars(3)).degree(), 0);
}

TEST(PolynomialTest, IncompatibleVariablesThrow) {
  const Polynomial a = Polynomial::Variable({"x", "y"}, 0);
  const Polynomial b = Polynomial::Variable({"y", "x"}, 0);
  EXPECT_THROW(a + b, StructuralError);
  EXPECT_THROW(a * b, StructuralError);
  EXPECT_FALSE(a == b);
}

TEST(PolynomialTest, SubsetOperandEmbeds) {
  const Polynomial x = Polynomial::Variable({"x"}, 0);
  const Polynomial xt = Polynomial::Variable({"x", "u", "t"}, 2);
  const Polynomial s = x + xt;
  EXPECT_EQ(s.num_vars(), 3);
  EXPECT_DOUBLE_EQ(s.coefficient(Monomial({1, 0, 0})), 1.0);
  EXPECT_DOUBLE_EQ(s.coefficient(Monomial({0, 0, 1})), 1.0);
}

TEST(PolynomialTest, CanonicalFormDropsTinyTerms) {
  const auto v = Vars(1);
  Polynomial p = X(v, 0) + 1e-15;
  EXPECT_EQ(p.terms().size(), 1u);
  p.AddTerm(Monomial({1}), -1.0);
  EXPECT_TRUE(p.is_zero());
}

TEST(PolynomialTest, PartialExamples) {
  const auto v = Vars(2);
  const Polynomial g = (X(v, 0) - 1.5).Pow(2) + X(v, 1).Pow(2);
  EXPECT_EQ(g.Partial(0), 2.0 * X(v, 0) - 3.0);
  EXPECT_TRUE(Polynomial(v, 4.0).Partial(1).is_zero());
  EXPECT_EQ(X(v, 0).Pow(3).Partial(0), 3.0 * X(v, 0).Pow(2));
}

TEST(PolynomialTest, GradientExamples) {
  const auto v = Vars(2);
  const Polynomial g = X(v, 0).Pow(2) + X(v, 1).Pow(2);
  const std::vector<int> idx{0, 1};
  auto grad = Gradient(g, idx);
  ASSERT_EQ(grad.size(), 2u);
  EXPECT_EQ(grad[0], 2.0 * X(v, 0));
  EXPECT_EQ(grad[1], 2.0 * X(v, 1));

  const Polynomial ex2 = (X(v, 0) - 1.5).Pow(2) + X(v, 1).Pow(2);
  grad = Gradient(ex2, idx);
  EXPECT_EQ(grad[0], 2.0 * X(v, 0) - 3.0);
  EXPECT_EQ(grad[1], 2.0 * X(v, 1));

  const std::vector<std::string> xt{"x1", "t"};
  const Polynomial tx = X(xt, 1) * X(xt, 0);
  const std::vector<int> state{0};
  grad = Gradient(tx, state);
  ASSERT_EQ(grad.size(), 1u);
  EXPECT_EQ(grad[0], X(xt, 1));
}

TEST(PolynomialTest, EvaluateExamples) {
  const auto v = Vars(2);
  const Polynomial g = X(v, 0).Pow(2) + X(v, 1).Pow(2);
  const std::vector<double> ones{1.0, 1.0};
  EXPECT_DOUBLE_EQ(g.Evaluate(ones), 2.0);

  const Polynomial u = Polynomial::Variable({"u"}, 0);
  const std::vector<double> two{2.0};
  EXPECT_DOUBLE_EQ((4.0 - u * u).Evaluate(two), 0.0);

  const std::vector<std::string> xu{"x", "u"};
  const std::vector<double> pt{3.0, 0.5};
  EXPECT_DOUBLE_EQ((X(xu, 0) * X(xu, 1)).Evaluate(pt), 1.5);

  const std::vector<double> wrong{1.0};
  EXPECT_THROW(g.Evaluate(wrong), InputError);
}

TEST(PolynomialTest, SubstituteKeepsVariables) {
  const std::vector<std::string> v{"x", "t"};
  const Polynomial p = X(v, 0) * X(v, 1) + X(v, 1).Pow(2);
  const Polynomial q = p.Substitute(1, 2.0);
  EXPECT_EQ(q.num_vars(), 2);
  EXPECT_EQ(q, 2.0 * X(v, 0) + 4.0);
}

TEST(PolynomialTest, ToStringIsReadable) {
  const std::vector<std::string> v{"x", "y"};
  const Polynomial p = 2.0 * X(v, 0) * X(v, 1) - 1.0;
  const std::string s = p.ToString();
  EXPECT_NE(s.find("x"), std::string::npos);
  EXPECT_NE(s.find("y"), std::string::npos);
}

TEST(PolynomialPropertyTest, RingAxioms) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const Polynomial a = RandomPolynomial(rng, n, 3);
    const Polynomial b = RandomPolynomial(rng, n, 3);
    const Polynomial c = RandomPolynomial(rng, n, 3);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a + (-a)).is_zero());
    EXPECT_EQ(a * Polynomial(a.variables(), 1.0), a);
  }
}

TEST(PolynomialPropertyTest, EvaluationIsRingHomomorphism) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    const Polynomial a = RandomPolynomial(rng, n, 3, 6, false);
    const Polynomial b = RandomPolynomial(rng, n, 3, 6, false);
    const Polynomial sum = a + b;
    const Polynomial prod = a * b;
    for (int k = 0; k < 100; ++k) {
      std::vector<double> p(n);
      for (double& x : p) x = coord(rng);
      const double ea = a.Evaluate(p), eb = b.Evaluate(p);
      const double scale_sum = 1.0 + std::abs(ea) + std::abs(eb);
      const double scale_prod = 1.0 + std::abs(ea * eb);
      EXPECT_NEAR(sum.Evaluate(p), ea + eb, 1e-10 * scale_sum);
      EXPECT_NEAR(prod.Evaluate(p), ea * eb, 1e-10 * scale_prod);
    }
  }
}

TEST(PolynomialPropertyTest, MixedPartialsCommute) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial p = RandomPolynomial(rng, 3, 6, 8);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        EXPECT_EQ(p.Partial(i).Partial(j), p.Partial(j).Partial(i));
      }
    }
  }
}

TEST(MonomialBasisTest, Counts) {
  const MonomialBasis b12 = MonomialBasis::Full(1, 2);
  ASSERT_EQ(b12.size(), 3);
  EXPECT_EQ(b12[0], Monomial({0}));
  EXPECT_EQ(b12[1], Monomial({1}));
  EXPECT_EQ(b12[2], Monomial({2}));
  EXPECT_EQ(MonomialBasis::Full(2, 2).size(), 6);
  EXPECT_EQ(MonomialBasis::Full(3, 4).size(), 35);
  for (int n = 1; n <= 4; ++n) {
    for (int d = 0; d <= 5; ++d) {
      EXPECT_EQ(MonomialBasis::Full(n, d).size(), Binomial(n + d, d));
    }
  }
}

TEST(MonomialBasisTest, StrictlyIncreasingGradedLex) {
  const MonomialBasis b = MonomialBasis::Full(3, 4);
  for (int i = 1; i < b.size(); ++i) {
    EXPECT_LT(b[i - 1], b[i]);
    EXPECT_LE(b[i - 1].degree(), b[i].degree());
  }
}

TEST(MonomialBasisTest, ScopeLeavesOtherVariablesAtZero) {
  // x1, x2, u, t with scope (x1, x2, t).
  const MonomialBasis b = MonomialBasis::OverScope(4, {0, 1, 3}, 2);
  EXPECT_EQ(b.size(), 10);
  for (const auto& m : b.entries()) EXPECT_EQ(m[2], 0);
  EXPECT_TRUE(b.IndexOf(Monomial({1, 0, 0, 1})).has_value());
  EXPECT_FALSE(b.IndexOf(Monomial({0, 0, 1, 0})).has_value());
}

TEST(CoefficientVectorTest, Examples) {
  const std::vector<std::string> v{"x"};
  const Polynomial x = X(v, 0);
  const Eigen::VectorXd c = CoefficientVector(x * x - 1.0, MonomialBasis::Full(1, 2));
  EXPECT_EQ(c, Eigen::Vector3d(-1.0, 0.0, 1.0));

  const MonomialBasis b22 = MonomialBasis::Full(2, 2);
  EXPECT_TRUE(CoefficientVector(Polynomial(Vars(2)), b22).isZero());

  const auto v2 = Vars(2);
  const Eigen::VectorXd e = CoefficientVector(X(v2, 0) * X(v2, 1), b22);
  const int slot = *b22.IndexOf(Monomial({1, 1}));
  for (int i = 0; i < e.size(); ++i) EXPECT_EQ(e[i], i == slot ? 1.0 : 0.0);
}

TEST(CoefficientVectorTest, OverflowNamesMonomial) {
  const std::vector<std::string> v{"x"};
  try {
    CoefficientVector(X(v, 0).Pow(3), MonomialBasis::Full(1, 2));
    FAIL() << "expected DegreeOverflowError";
  } catch (const DegreeOverflowError& e) {
    EXPECT_NE(std::string(e.what()).find("x^3"), std::string::npos) << e.what();
  }
}

TEST(CoefficientVectorTest, RoundTripIsExact) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const Polynomial p = RandomPolynomial(rng, n, 4, 8, false);
    const MonomialBasis b = MonomialBasis::Full(n, 4);
    const Eigen::VectorXd c = CoefficientVector(p, b);
    EXPECT_EQ(FromCoefficients(b, c, p.variables()), p);
    EXPECT_EQ(CoefficientVector(FromCoefficients(b, c, p.variables()), b), c);
  }
}

TEST(IntegrateTest, Examples) {
  const std::vector<std::string> v{"x"};
  const std::vector<Interval> box1{{-2.0, 2.0}};
  EXPECT_DOUBLE_EQ(IntegrateOverBox(X(v, 0).Pow(3), box1), 0.0);

  const auto v2 = Vars(2);
  const std::vector<Interval> box2{{-2.0, 2.0}, {-2.0, 2.0}};
  EXPECT_NEAR(IntegrateOverBox(X(v2, 0).Pow(2) + X(v2, 1).Pow(2), box2),
              128.0 / 3.0, 1e-12);
  const std::vector<Interval> box3{{-3.0, 3.0}, {-3.0, 3.0}};
  EXPECT_DOUBLE_EQ(IntegrateOverBox(Polynomial(v2, 1.0), box3), 36.0);
}

TEST(IntegrateTest, FixedVariablesAreSubstituted) {
  const std::vector<std::string> v{"x", "t"};
  const Polynomial p = X(v, 0).Pow(2) * (1.0 + X(v, 1));
  BoxDomain at_zero{{{0, {-2.0, 2.0}}}, {{1, 0.0}}};
  EXPECT_NEAR(IntegrateOverBox(p, at_zero), 16.0 / 3.0, 1e-12);
  BoxDomain at_one{{{0, {-2.0, 2.0}}}, {{1, 1.0}}};
  EXPECT_NEAR(IntegrateOverBox(p, at_one), 32.0 / 3.0, 1e-12);
  BoxDomain missing{{{0, {-2.0, 2.0}}}, {}};
  EXPECT_THROW(IntegrateOverBox(p, missing), InputError);
}

TEST(IntegrateTest, RejectsBadIntervals) {
  const std::vector<std::string> v{"x"};
  const std::vector<Interval> inverted{{1.0, -1.0}};
  EXPECT_THROW(IntegrateOverBox(X(v, 0), inverted), InputError);
  const std::vector<Interval> unbounded{{0.0, INFINITY}};
  EXPECT_THROW(IntegrateOverBox(X(v, 0), unbounded), InputError);
}

// Adaptive Simpson on [a, b].
double AdaptiveSimpson(const std::function<double(double)>& f, double a,
                       double b, double tol) {
  std::function<double(double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi,
          double whole, int depth) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
          return left + right + (left + right - whole) / 15.0;
        }
        return rec(lo, mid, flo, flm, fmid, left, depth - 1) +
               rec(mid, hi, fmid, frm, fhi, right, depth - 1);
      };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), 40);
}

double NestedQuadrature(const Polynomial& p, const std::vector<Interval>& box) {
  const int n = static_cast<int>(box.size());
  std::vector<double> point(n);
  std::function<double(int)> level = [&](int dim) -> double {
    if (dim == n) return p.Evaluate(point);
    return AdaptiveSimpson(
        [&](double x) {
          point[dim] = x;
          return level(dim + 1);
        },
        box[dim].lo, box[dim].hi, 1e-13);
  };
  return level(0);
}

TEST(IntegratePropertyTest, MatchesAdaptiveQuadrature) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lo(-2.0, 0.5);
  std::uniform_real_distribution<double> width(0.2, 2.5);
  for (int trial = 0; trial < 24; ++trial) {
    const int n = 1 + trial % 3;
    const Polynomial p = RandomPolynomial(rng, n, 6, 6, false);
    std::vector<Interval> box(n);
    for (auto& iv : box) {
      iv.lo = lo(rng);
      iv.hi = iv.lo + width(rng);
    }
    const double exact = IntegrateOverBox(p, box);
    const double numeric = NestedQuadrature(p, box);
    EXPECT_NEAR(exact, numeric, 1e-8 * std::max(1.0, std::abs(numeric)))
        << p.ToString();
  }
}

TEST(PolyJsonTest, RoundTrip) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Polynomial p = RandomPolynomial(rng, 3, 4, 8, false);
    const nlohmann::json j = PolynomialToJson(p);
    EXPECT_EQ(PolynomialFromJson(j), p);
    EXPECT_EQ(PolynomialFromJson(nlohmann::json::parse(j.dump())), p);
  }
}

TEST(PolyJsonTest, BareArrayNeedsVariables) {
  const nlohmann::json j = nlohmann::json::parse("[[1.0, [2, 0]], [-3, [0, 1]]]");
  const std::vector<std::string> v{"x", "y"};
  const Polynomial p = PolynomialFromJson(j, v);
  EXPECT_DOUBLE_EQ(p.coefficient(Monomial({2, 0})), 1.0);
  EXPECT_DOUBLE_EQ(p.coefficient(Monomial({0, 1})), -3.0);
  EXPECT_THROW(PolynomialFromJson(nlohmann::json::parse("[[1, [1, 2, 3]]]"), v),
               std::exception);
}

TEST(PolyJsonTest, TermsAreGradedLexOrdered) {
  const auto v = Vars(2);
  const Polynomial p = X(v, 0).Pow(2) + X(v, 1) + 1.0;
  const nlohmann::json t = TermsToJson(p);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0][1], nlohmann::json::array({0, 0}));
  EXPECT_EQ(t[2][1], nlohmann::json::array({2, 0}));
}

}  // namespace
}  // namespace reachbound
