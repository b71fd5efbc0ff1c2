#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "reachbound/certbuild/sos_program.h"
#include "reachbound/problem/problem_io.h"
#include "reachbound/sdpsolve/ipm_solver.h"
#include "reachbound/sdpsolve/sdp_instance.h"
#include "planted_sdp.h"

namespace reachbound {
namespace {

const std::string kProblems = REACHBOUND_PROBLEMS_DIR;

ProblemSpec Load(const std::string& name) {
  return LoadProblemFile(kProblems + "/" + name + ".json");
}

SdpInstance TwoByTwo() {
  SdpInstance inst;
  inst.block_names = {"Q"};
  inst.block_sizes = {2};
  inst.constraints.push_back({"offdiag", {{0, 0, 1, 0.5}}, {}, 1.0});
  inst.constraints.push_back({"q22", {{0, 1, 1, 1.0}}, {}, 1.0});
  inst.block_objective = {{0, 0, 0, 1.0}};
  return inst;
}

TEST(SolveTest, TwoByTwoAnalytic) {
  const SdpSolution s = Solve(TwoByTwo());
  ASSERT_EQ(s.status, SolveStatus::kOptimal) << s.message;
  EXPECT_NEAR(s.blocks[0](0, 0), 1.0, 1e-6);
  EXPECT_NEAR(s.primal_objective, 1.0, 1e-6);
}

// Eigenvalue sweep oracle: [[q, 1], [1, 1]] is PSD iff q >= 1.
TEST(SolveTest, TwoByTwoSweepOracle) {
  double smallest_psd = INFINITY;
  for (int k = 0; k <= 4000; ++k) {
    const double q = k * 1e-3;
    Eigen::Matrix2d m;
    m << q, 1.0, 1.0, 1.0;
    if (Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(m).eigenvalues().minCoeff() >= -1e-12) {
      smallest_psd = std::min(smallest_psd, q);
    }
  }
  EXPECT_NEAR(Solve(TwoByTwo()).primal_objective, smallest_psd, 1e-3);
}

TEST(SolveTest, PinnedIdentityIsFeasibility) {
  SdpInstance inst;
  inst.block_names = {"Q"};
  inst.block_sizes = {3};
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      inst.constraints.push_back({"pin", {{0, a, b, a == b ? 1.0 : 0.5}}, {}, a == b ? 1.0 : 0.0});
    }
  }
  const SdpSolution s = Solve(inst);
  ASSERT_EQ(s.status, SolveStatus::kOptimal) << s.message;
  EXPECT_TRUE(s.blocks[0].isApprox(Eigen::Matrix3d::Identity(), 1e-7));
  EXPECT_LE(s.diagnostics.gap, 1e-8);
}

TEST(SolveTest, ContradictoryEqualities) {
  SdpInstance inst;
  inst.block_names = {"Q"};
  inst.block_sizes = {2};
  inst.constraints.push_back({"a", {{0, 0, 0, 1.0}}, {}, 1.0});
  inst.constraints.push_back({"b", {{0, 0, 0, 1.0}}, {}, 2.0});
  EXPECT_EQ(Solve(inst).status, SolveStatus::kInfeasibleSuspected);
}

TEST(SolveTest, DuplicateRowsAreDropped) {
  SdpInstance inst = TwoByTwo();
  inst.constraints.push_back({"again", {{0, 1, 1, 2.0}}, {}, 2.0});
  const SdpSolution s = Solve(inst);
  ASSERT_EQ(s.status, SolveStatus::kOptimal) << s.message;
  EXPECT_EQ(s.diagnostics.dropped_constraints, 1);
  EXPECT_NEAR(s.primal_objective, 1.0, 1e-6);
}

TEST(SolveTest, PsdInfeasible) {
  SdpInstance inst;
  inst.block_names = {"Q"};
  inst.block_sizes = {1};
  inst.constraints.push_back({"neg", {{0, 0, 0, 1.0}}, {}, -1.0});
  EXPECT_EQ(Solve(inst).status, SolveStatus::kInfeasibleSuspected);
}

TEST(SolveTest, FreeVariablesHandledDirectly) {
  // min w s.t. w - Q = 0 with Q >= 0 (1x1): optimum 0.
  SdpInstance inst;
  inst.block_names = {"Q"};
  inst.block_sizes = {1};
  inst.free_names = {"w"};
  inst.free_objective = Eigen::VectorXd::Ones(1);
  inst.constraints.push_back({"link", {{0, 0, 0, -1.0}}, {{0, 1.0}}, 0.0});
  const SdpSolution s = Solve(inst);
  ASSERT_EQ(s.status, SolveStatus::kOptimal) << s.message;
  EXPECT_NEAR(s.free[0], 0.0, 1e-7);
}

TEST(SolveTest, PlantedRandomInstances) {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 50; ++trial) {
    const test::PlantedSdp p = test::MakePlantedSdp(rng);
    const SdpSolution s = Solve(p.instance);
    ASSERT_EQ(s.status, SolveStatus::kOptimal) << "trial " << trial << ": " << s.message;
    EXPECT_LE(s.diagnostics.primal_residual, 1e-7);
    EXPECT_LE(s.diagnostics.dual_residual, 1e-7);
    EXPECT_LE(s.primal_objective, p.planted_objective + 1e-5);
  }
}

TEST(SolveTest, DependentFreeColumns) {
  // min Q11 + w0 + 2 w1 with Q12 + w0 + 2 w1 = 1, Q22 = 1: only w0 + 2 w1 matters.
  SdpInstance inst;
  inst.block_names = {"Q"};
  inst.block_sizes = {2};
  inst.free_names = {"w0", "w1"};
  inst.free_objective = Eigen::Vector2d(1.0, 2.0);
  inst.constraints.push_back({"offdiag", {{0, 0, 1, 0.5}}, {{0, 1.0}, {1, 2.0}}, 1.0});
  inst.constraints.push_back({"q22", {{0, 1, 1, 1.0}}, {}, 1.0});
  inst.block_objective = {{0, 0, 0, 1.0}, {0, 0, 1, 0.5}};
  const SdpSolution s = Solve(inst);
  ASSERT_EQ(s.status, SolveStatus::kOptimal) << s.message;
  ASSERT_EQ(s.free.size(), 2);
  EXPECT_LE(s.diagnostics.primal_residual, 1e-7);
  // Objective Q11 + Q12 + (1 - Q12) = Q11 + 1 >= 1 with Q11 = 0 feasible at Q12 = 0.
  EXPECT_NEAR(s.primal_objective, 1.0, 1e-6);

  inst.free_objective = Eigen::Vector2d(1.0, 3.0);
  EXPECT_EQ(Solve(inst).status, SolveStatus::kInfeasibleSuspected);
}

TEST(SolveTest, DeterministicGivenOptions) {
  std::mt19937_64 rng(5);
  const test::PlantedSdp p = test::MakePlantedSdp(rng);
  const SdpSolution a = Solve(p.instance);
  const SdpSolution b = Solve(p.instance);
  EXPECT_EQ(a.primal_objective, b.primal_objective);
  EXPECT_EQ(a.free, b.free);
  for (size_t j = 0; j < a.blocks.size(); ++j) EXPECT_EQ(a.blocks[j], b.blocks[j]);
}

TEST(CompileTest, SingleGramIdentity) {
  // p = x^2 SOS with basis [1, x] as a hand-built program.
  SosProgram prog;
  prog.spec.variables = {"x"};
  DecisionPolynomial q{"p", DecisionKind::kSos, Side::kLower, {0},
                       MonomialBasis::Full(1, 1), 2, 0};
  prog.decisions.push_back(q);
  prog.num_blocks = 1;
  prog.objective = Eigen::VectorXd::Zero(0);
  prog.constraints.push_back({"p", Monomial({0}), {}, {{0, 0, 0, 1.0}}, 0.0});
  prog.constraints.push_back({"p", Monomial({1}), {}, {{0, 0, 1, 2.0}}, 0.0});
  prog.constraints.push_back({"p", Monomial({2}), {}, {{0, 1, 1, 1.0}}, 1.0});
  const SdpInstance inst = Compile(prog);
  ASSERT_EQ(inst.block_sizes, std::vector<int>{2});
  ASSERT_EQ(inst.num_constraints(), 3);
  EXPECT_DOUBLE_EQ(inst.constraints[1].entries[0].value, 1.0);
  EXPECT_DOUBLE_EQ(inst.constraints[2].rhs, 1.0);
  const SdpSolution s = Solve(inst);
  ASSERT_EQ(s.status, SolveStatus::kOptimal) << s.message;
  EXPECT_NEAR(s.blocks[0](1, 1), 1.0, 1e-7);
  EXPECT_NEAR(s.blocks[0](0, 0), 0.0, 1e-6);
}

TEST(CompileTest, ScalarExampleBlocks) {
  const SosProgram prog = BuildSosProgram(Load("scalar_xu"));
  const SdpInstance inst = Compile(prog);
  EXPECT_EQ(inst.num_blocks(), prog.num_blocks);
  EXPECT_EQ(inst.num_constraints(), 182);
  EXPECT_EQ(inst.num_free(), 30);
  int k1 = -1;
  for (int j = 0; j < inst.num_blocks(); ++j) {
    if (inst.block_names[j] == "k1_l") k1 = j;
  }
  ASSERT_GE(k1, 0);
  EXPECT_EQ(inst.block_sizes[k1], 20);
}

TEST(CompileTest, FeasibilityProgramHasZeroObjective) {
  SdpInstance inst = TwoByTwo();
  inst.block_objective.clear();
  const SdpSolution s = Solve(inst);
  ASSERT_EQ(s.status, SolveStatus::kOptimal) << s.message;
  EXPECT_NEAR(s.primal_objective, 0.0, 1e-7);
}

TEST(SolveProgramTest, ScalarExampleConverges) {
  const SosProgram prog = BuildSosProgram(Load("scalar_xu"));
  SolverOptions opt;
  const SdpSolution s = Solve(Compile(prog), opt);
  ASSERT_EQ(s.status, SolveStatus::kOptimal) << s.message;
  EXPECT_GT(s.primal_objective, 0.0);
  EXPECT_LT(s.diagnostics.iterations, 200);
}

}  // namespace
}  // namespace reachbound
