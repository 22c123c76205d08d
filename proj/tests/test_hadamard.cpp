#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tginv/hadamard.hpp"

using namespace tginv;

TEST(Rational, Normalizes) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(3, -6), Rational(-1, 2));
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_THROW(Rational(1, 0), DomainError);
  EXPECT_EQ(Rational(1, 4).to_string(), "1/4");
}

TEST(RootOfUnity, ExactQuarterTurns) {
  EXPECT_EQ(root_of_unity(1, 4), Complex(0, 1));
  EXPECT_EQ(root_of_unity(2, 4), Complex(-1, 0));
  EXPECT_EQ(root_of_unity(1, 2), Complex(-1, 0));
  EXPECT_EQ(root_of_unity(-1, 4), Complex(0, -1));
  EXPECT_NEAR(std::abs(root_of_unity(1, 3) - std::polar(1.0, 2 * std::numbers::pi / 3)), 0, 1e-15);
}

TEST(PrincipalPower, Examples) {
  EXPECT_EQ(principal_power(Complex(4), Rational(1, 2)), Complex(2));
  EXPECT_NEAR(std::abs(principal_power(Complex(-1), Rational(1, 2)) - Complex(0, 1)), 0, 1e-15);
  EXPECT_EQ(principal_power(Complex(0), Rational(1, 3)), Complex(0));
  EXPECT_NEAR(std::abs(principal_power(Complex(-1, -0.0), Rational(1, 2)) - Complex(0, 1)), 0, 1e-15);
  EXPECT_EQ(principal_power(Complex(0, 2), Rational(3)), Complex(0, -8));
  EXPECT_EQ(principal_power(Complex(2), Rational(-2)), Complex(0.25));
  EXPECT_THROW(principal_power(Complex(0), Rational(-1, 2)), DomainError);
  EXPECT_EQ(principal_power(Complex(5, 5), Rational(0)), Complex(1));
}

TEST(PrincipalPower, MatchesPolarForm) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Complex z = oracle::random_vector(rng, 1)[0];
    const int q = 2 + trial % 5;
    EXPECT_LE(std::abs(principal_power(z, Rational(1, q)) - oracle::roots(z, q)[0]), 1e-14);
  }
}

TEST(HadamardPower, BranchCountAndEnumeration) {
  const VectorXc x{{Complex(-8), Complex(0), Complex(0, 1)}};
  EXPECT_EQ(branch_count(x, Rational(1, 3)), 9u);
  EXPECT_EQ(branch_count(x, Rational(2)), 1u);
  const auto all = branch_hadamard_powers(x, Rational(1, 3), 4096);
  ASSERT_EQ(all.size(), 9u);
  EXPECT_EQ(all[0], principal_hadamard_power(x, Rational(1, 3)));
  const auto want = oracle::all_roots(x, 3);
  for (const VectorXc& w : want) {
    const bool found = std::any_of(all.begin(), all.end(),
                                   [&](const VectorXc& v) { return oracle::max_abs(v - w) < 1e-13; });
    EXPECT_TRUE(found);
  }
  for (const VectorXc& v : all) EXPECT_LE(oracle::max_abs(principal_hadamard_power(v, Rational(3)) - x), 1e-13);
}

TEST(HadamardPower, PolicyAndCap) {
  const VectorXc x = VectorXc::Constant(13, Complex(2));
  EXPECT_EQ(hadamard_power(x, Rational(1, 2), BranchPolicy{}).size(), 1u);
  EXPECT_THROW(hadamard_power(x, Rational(1, 2), BranchPolicy{BranchMode::all, 4096}), CapError);
  EXPECT_EQ(hadamard_power(VectorXc(x.head(12)), Rational(1, 2), BranchPolicy{BranchMode::exists, 4096}).size(),
            4096u);
}

TEST(HadamardPower, UnitTensorActsAsPower) {
  std::mt19937_64 rng(12);
  const VectorXc x = oracle::random_vector(rng, 3);
  for (int t = 2; t <= 5; ++t) {
    EXPECT_LE(oracle::rel(tginv::apply(unit_tensor(t, 3), x), principal_hadamard_power(x, Rational(t - 1))), 1e-14);
  }
}
