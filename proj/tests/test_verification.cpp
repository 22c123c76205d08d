#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tginv/fixtures.hpp"
#include "tginv/ginv.hpp"
#include "tginv/verification.hpp"

using namespace tginv;

namespace {

VerificationSpec spec_of(GinvKind kind, BranchMode mode, int samples = 20, std::uint64_t seed = 0) {
  VerificationSpec s;
  s.kind = kind;
  s.samples = samples;
  s.seed = seed;
  s.policy.mode = mode;
  return s;
}

// Worst and best kind-one residual over every 4th-root assignment, by brute force.
std::pair<double, double> ex41_kind_one_oracle(const Tensor& x, const VectorXc& y) {
  const Tensor a = fixtures::ex41_A();
  const VectorXc b = oracle::apply(a, y);
  double worst = 0, best = INFINITY;
  for (const VectorXc& w : oracle::all_roots(b, 4)) {
    const double r = oracle::rel(oracle::apply(a, oracle::apply(x, w)), b);
    worst = std::max(worst, r);
    best = std::min(best, r);
  }
  return {worst, best};
}

}  // namespace

TEST(Residual, Definition) {
  EXPECT_DOUBLE_EQ(relative_residual(VectorXc{{3.0}}, VectorXc{{1.0}}), 2.0);
  EXPECT_DOUBLE_EQ(relative_residual(VectorXc{{0.0, 30.0}}, VectorXc{{0.0, 10.0}}), 2.0);
  EXPECT_DOUBLE_EQ(relative_residual(VectorXc{{0.5}}, VectorXc{{0.0}}), 0.5);
  EXPECT_THROW(relative_residual(VectorXc(2), VectorXc(3)), ShapeError);
}

TEST(Sampling, RealBoxHasZeroImaginary) {
  std::mt19937_64 rng(3);
  const VectorXc y = draw_sample(rng, 50, Sampling::real_box);
  EXPECT_TRUE(y.imag().isZero(0));
  EXPECT_LE(y.real().cwiseAbs().maxCoeff(), 1.0);
}

TEST(VerifyInverse, Ex41ExhaustiveAgreesWithOracle) {
  const Tensor a = fixtures::ex41_A();
  for (const Tensor& x : {fixtures::ex41_Bfix(), fixtures::ex41_B_printed()}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto all = verify_inverse(a, x, spec_of(GinvKind::one, BranchMode::all, 4, seed));
      const auto some = verify_inverse(a, x, spec_of(GinvKind::one, BranchMode::exists, 4, seed));
      std::mt19937_64 rng(seed);
      for (std::size_t s = 0; s < 4; ++s) {
        const auto [worst, best] = ex41_kind_one_oracle(x, draw_sample(rng, 3, Sampling::complex_box));
        EXPECT_NEAR(all.residuals[s], worst, 1e-9 * std::max(1.0, worst));
        EXPECT_NEAR(some.residuals[s], best, 1e-9 * std::max(1.0, best));
        EXPECT_EQ(all.branches[s].lhs_count, 64u);
      }
    }
  }
}

TEST(VerifyInverse, Ex41Verdicts) {
  const Tensor a = fixtures::ex41_A();
  EXPECT_TRUE(verify_inverse(a, fixtures::ex41_Bfix(), spec_of(GinvKind::one, BranchMode::all)).pass);
  EXPECT_TRUE(verify_inverse(a, fixtures::ex41_Bfix(), spec_of(GinvKind::two, BranchMode::all)).pass);
  const auto printed = verify_inverse(a, fixtures::ex41_B_printed(), spec_of(GinvKind::one, BranchMode::exists));
  EXPECT_FALSE(printed.pass);
  ASSERT_TRUE(printed.witness);
  EXPECT_EQ(printed.witness->sample, 0u);
  EXPECT_GT(printed.witness->residual, 1e-2);
}

TEST(VerifyInverse, KindFiveNeedsSquare) {
  const Tensor a = Tensor(Shape(3, 2, 3), VectorXc::Ones(18));
  const Tensor x = Tensor(Shape(3, 3, 2), VectorXc::Ones(12));
  EXPECT_THROW(verify_inverse(a, x, spec_of(GinvKind::five, BranchMode::principal)), ShapeError);
  EXPECT_THROW(verify_inverse(a, x, spec_of(GinvKind::group, BranchMode::principal)), ShapeError);
  EXPECT_NO_THROW(verify_inverse(a, x, spec_of(GinvKind::one, BranchMode::principal, 2)));
  EXPECT_THROW(verify_inverse(a, a, spec_of(GinvKind::one, BranchMode::principal)), ShapeError);
}

TEST(VerifyInverse, Deterministic) {
  const auto s = spec_of(GinvKind::one, BranchMode::exists, 30, 7);
  const auto r1 = verify_inverse(fixtures::ex41_A(), fixtures::ex41_B_printed(), s);
  const auto r2 = verify_inverse(fixtures::ex41_A(), fixtures::ex41_B_printed(), s);
  EXPECT_EQ(r1.residuals, r2.residuals);
  EXPECT_EQ(r1.witness->y, r2.witness->y);
}

TEST(VerifyInverse, ProbesRunFirst) {
  auto s = spec_of(GinvKind::one, BranchMode::principal, 3);
  s.probes = {VectorXc{{1.0, 1.0, 1.0}}};
  const auto r = verify_inverse(fixtures::ex41_A(), fixtures::ex41_Bfix(), s);
  EXPECT_EQ(r.samples_run, 4u);
  s.probes = {VectorXc{{1.0, 1.0}}};
  EXPECT_THROW(verify_inverse(fixtures::ex41_A(), fixtures::ex41_Bfix(), s), ShapeError);
}

TEST(VerifyInverse, JointCapOnKindFive) {
  // Both sides carry 1/4 roots of a length-5 vector: 4^5 * 4^5 joint assignments.
  const Tensor a = unit_tensor(3, 5);
  const Tensor x = diag_group_inverse(*as_diagonal(a), 3);
  EXPECT_THROW(verify_inverse(a, x, spec_of(GinvKind::five, BranchMode::exists, 1)), CapError);
  const Tensor a2 = unit_tensor(3, 2);
  EXPECT_TRUE(verify_inverse(a2, diag_group_inverse(*as_diagonal(a2), 3), spec_of(GinvKind::five, BranchMode::exists, 5)).pass);
}

TEST(EvaluateIdentity, Quantifiers) {
  // lhs = w with w^2 = 4, rhs = -2: only some root matches.
  const auto lhs = IdentitySide::rooted(VectorXc{{4.0}}, Rational(1, 2), [](const VectorXc& w) { return w; });
  const auto rhs = IdentitySide::fixed(VectorXc{{-2.0}});
  EXPECT_DOUBLE_EQ(evaluate_identity(lhs, rhs, BranchPolicy{}).residual, 2.0);
  const auto some = evaluate_identity(lhs, rhs, BranchPolicy{BranchMode::exists, 4096});
  EXPECT_DOUBLE_EQ(some.residual, 0.0);
  EXPECT_EQ(some.branch.lhs, 1u);
  EXPECT_DOUBLE_EQ(evaluate_identity(lhs, rhs, BranchPolicy{BranchMode::all, 4096}).residual, 2.0);
}

TEST(MergeReports, CombinesParts) {
  VerificationReport p1, p2;
  p1.residuals = {0.1, 0.0};
  p1.branches.resize(2);
  p1.max_residual = 0.1;
  p1.samples_run = 2;
  p2.residuals = {0.0, 0.3};
  p2.branches.resize(2);
  p2.max_residual = 0.3;
  p2.pass = false;
  p2.samples_run = 2;
  const auto m = merge_reports("group", {p1, p2});
  EXPECT_FALSE(m.pass);
  EXPECT_DOUBLE_EQ(m.max_residual, 0.3);
  EXPECT_EQ(m.residuals, (std::vector<double>{0.1, 0.3}));
  EXPECT_EQ(m.failures(0.2), 1u);
}
