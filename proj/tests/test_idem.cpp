#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tginv/fixtures.hpp"
#include "tginv/idem.hpp"

using namespace tginv;

namespace {

VerificationSpec spec_of(BranchMode mode, int samples = 50) {
  VerificationSpec s;
  s.samples = samples;
  s.policy.mode = mode;
  return s;
}

}  // namespace

TEST(Idempotent, Ex42AOracleForm) {
  // w = (u^2, 4u^2)^(1/2) principal gives A w^2 = (v^2, 4v^2) with v = 5w1 - 3w2.
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXc y = oracle::random_vector(rng, 2);
    EXPECT_LE(oracle::rel(tginv::apply(fixtures::ex42_A(), y), oracle::ex42_A_form(y)), 1e-13);
    EXPECT_LE(oracle::rel(tginv::apply(fixtures::ex42_B(), y), oracle::ex42_B_form(y)), 1e-13);
  }
}

TEST(Idempotent, Ex42AVerdicts) {
  EXPECT_TRUE(is_idempotent(fixtures::ex42_A(), spec_of(BranchMode::principal)).pass());
  const auto all = is_idempotent(fixtures::ex42_A(), spec_of(BranchMode::all));
  EXPECT_FALSE(all.pass());
  ASSERT_TRUE(all.check.witness);
  // The failing branch makes 5 w1 - 3 w2 = 11 u or -11 u instead of -u or u.
  const Witness& w = *all.check.witness;
  EXPECT_LE(oracle::rel(w.rhs, oracle::ex42_A_form(w.y)), 1e-12);
  EXPECT_NEAR(std::abs(w.lhs[0]) / std::abs(w.rhs[0]), 121.0, 1e-6);
}

TEST(Idempotent, Ex42BPrincipalOnly) {
  EXPECT_TRUE(is_idempotent(fixtures::ex42_B(), spec_of(BranchMode::principal)).pass());
  EXPECT_FALSE(is_idempotent(fixtures::ex42_B(), spec_of(BranchMode::all)).pass());
}

TEST(KTIdempotent, Ex42BFailsAtOnes) {
  for (BranchMode mode : {BranchMode::exists, BranchMode::all}) {
    auto s = spec_of(mode, 0);
    s.probes = {VectorXc{{1.0, 1.0}}};
    const auto r = is_k_t_idempotent(fixtures::ex42_B(), 2, s);
    EXPECT_FALSE(r.pass());
    ASSERT_TRUE(r.check.witness);
    EXPECT_EQ(r.check.witness->rhs, (VectorXc{{1.0, 4.0}}));
    // Every branch gives a multiple of (1, 4) with modulus ratio 25 or more.
    const VectorXc lhs = r.check.witness->lhs;
    EXPECT_NEAR(std::abs(lhs[1] / lhs[0]), 4.0, 1e-9);
    EXPECT_GE(std::abs(lhs[0]), 25.0 - 1e-9);
  }
}

TEST(KTIdempotent, DiagonalSignsPropagate) {
  std::mt19937_64 rng(32);
  const double values[] = {0.0, 1.0, -1.0};
  for (int trial = 0; trial < 10; ++trial) {
    VectorXc d(3);
    for (Index i = 0; i < 3; ++i) d[i] = values[rng() % 3];
    const HomogeneousMap a(diagonal_tensor(3, d));
    for (int k = 2; k <= 4; ++k) {
      const auto r = is_k_t_idempotent(a, k, spec_of(BranchMode::all, 10));
      EXPECT_TRUE(r.pass()) << "k=" << k;
      EXPECT_LE(r.check.max_residual, 1e-12);
    }
    const auto prop = t_implies_k_check(a, 4, spec_of(BranchMode::principal, 10));
    EXPECT_TRUE(prop.precondition);
    EXPECT_TRUE(prop.pass);
    EXPECT_EQ(prop.by_k.size(), 3u);
  }
}

TEST(KTIdempotent, PropagationNeedsPrecondition) {
  const auto prop = t_implies_k_check(HomogeneousMap(fixtures::ex42_B()), 4, spec_of(BranchMode::principal, 10));
  EXPECT_FALSE(prop.precondition);
  EXPECT_FALSE(prop.pass);
  EXPECT_EQ(prop.by_k.size(), 1u);
}

TEST(KTIdempotent, Errors) {
  EXPECT_THROW(is_k_t_idempotent(fixtures::ex42_A(), 1, spec_of(BranchMode::principal)), DomainError);
  EXPECT_THROW(is_idempotent(Tensor(Shape(3, 2, 3), VectorXc::Ones(18)), spec_of(BranchMode::principal)), ShapeError);
}

TEST(SelfInverse, UnitTensor) {
  const auto r = self_inverse_check(unit_tensor(3, 2), spec_of(BranchMode::principal, 20));
  EXPECT_TRUE(r.t_idempotent.pass());
  EXPECT_TRUE(r.idempotent.pass());
  ASSERT_TRUE(r.two && r.one && r.solver_residual);
  EXPECT_TRUE(r.pass);
}

TEST(SelfInverse, SkipsWithoutHypothesis) {
  const auto r = self_inverse_check(fixtures::ex42_B(), spec_of(BranchMode::principal, 20));
  EXPECT_FALSE(r.t_idempotent.pass());
  EXPECT_FALSE(r.two.has_value());
  EXPECT_TRUE(r.pass);
}

TEST(ProductIdempotence, Ex41Functional) {
  const auto s = spec_of(BranchMode::all, 20);
  EXPECT_TRUE(product_idempotence_check(fixtures::ex41_A(), fixtures::ex41_Bfix(), GinvKind::one, s).pass());
  EXPECT_TRUE(product_idempotence_check(fixtures::ex41_A(), fixtures::ex41_Bfix(), GinvKind::two, s).pass());
  EXPECT_THROW(product_idempotence_check(fixtures::ex41_A(), fixtures::ex41_Bfix(), GinvKind::five, s), DomainError);
}
