#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tginv/fixtures.hpp"
#include "tginv/spectra.hpp"

using namespace tginv;

namespace {

std::vector<double> real_lambdas(const Dim2Spectrum& s) {
  std::vector<double> out;
  for (const auto& p : s.pairs) out.push_back(p.lambda.real());
  return out;
}

}  // namespace

TEST(PolyRoots, KnownRoots) {
  // (z - 1)(z - 2)(z + i) = z^3 + (i - 3) z^2 + (2 - 3i) z + 2i
  const PolyCoeffs p{{Complex(0, 2), Complex(2, -3), Complex(-3, 1), Complex(1)}};
  EXPECT_EQ(p.degree(), 3);
  auto r = poly_roots(p).roots;
  ASSERT_EQ(r.size(), 3u);
  for (const Complex& want : {Complex(1), Complex(2), Complex(0, -1)}) {
    const bool found = std::any_of(r.begin(), r.end(), [&](const Complex& z) { return std::abs(z - want) < 1e-12; });
    EXPECT_TRUE(found) << want;
  }
}

TEST(PolyRoots, Degenerate) {
  EXPECT_THROW(poly_roots(PolyCoeffs{{0.0, 0.0}}), DegenerateError);
  EXPECT_THROW(poly_roots(PolyCoeffs{{3.0, 0.0}}), DegenerateError);
  EXPECT_EQ((PolyCoeffs{{1.0, 2.0, 0.0}}.degree()), 1);
}

TEST(Eigenpair, Verify) {
  const VectorXc x{{Complex(0.3, 1), Complex(-2)}};
  EXPECT_TRUE(verify_eigenpair(unit_tensor(3, 2), 1.0, x).pass);
  EXPECT_FALSE(verify_eigenpair(unit_tensor(3, 2), 2.0, x).pass);
  EXPECT_THROW(eigen_residual(unit_tensor(3, 2), 1.0, VectorXc::Zero(2)), DomainError);
}

TEST(Dim2, Ex42Spectra) {
  const Dim2Spectrum a = eigenvalues_dim2(fixtures::ex42_A());
  const Dim2Spectrum b = eigenvalues_dim2(fixtures::ex42_B());
  ASSERT_FALSE(a.continuum);
  const auto la = real_lambdas(a), lb = real_lambdas(b);
  ASSERT_EQ(la.size(), 3u);
  ASSERT_EQ(lb.size(), 3u);
  const double want_a[] = {0, 1, 121}, want_b[] = {0, 1, 49};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(la[i], want_a[i], 1e-8 * std::max(1.0, want_a[i]));
    EXPECT_NEAR(lb[i], want_b[i], 1e-8 * std::max(1.0, want_b[i]));
  }
  for (const auto& p : a.pairs) {
    const VectorXc lhs = oracle::apply(fixtures::ex42_A(), p.x);
    EXPECT_LE(oracle::rel(lhs, p.lambda * p.x.cwiseProduct(p.x)), 1e-8);
  }
}

TEST(Dim2, RandomTensorsAgainstOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int t = 3 + trial % 2;
    const Tensor a = oracle::random_tensor(rng, t, 2, 2);
    const Dim2Spectrum s = eigenvalues_dim2(a);
    EXPECT_EQ(s.pairs.size(), static_cast<std::size_t>(2 * (t - 1)));
    for (const auto& p : s.pairs) {
      VectorXc power = VectorXc::Ones(2);
      for (int j = 1; j < t; ++j) power = power.cwiseProduct(p.x);
      EXPECT_LE(oracle::rel(oracle::apply(a, p.x), p.lambda * power), 1e-8);
      EXPECT_DOUBLE_EQ(p.x.cwiseAbs().maxCoeff(), 1.0);
    }
  }
}

TEST(Dim2, ContinuumAndDirectionAtInfinity) {
  EXPECT_TRUE(eigenvalues_dim2(unit_tensor(3, 2)).continuum);
  // A x^2 = (x1 x2, x1^2 + 3 x2^2): (0, 1) is an eigenvector with lambda = 3 and no other has lambda = 3.
  VectorXc e = VectorXc::Zero(8);
  e[1] = 1.0;
  e[4] = 1.0;
  e[7] = 3.0;
  const Dim2Spectrum s = eigenvalues_dim2(Tensor(Shape::square(3, 2), e));
  const bool has = std::any_of(s.pairs.begin(), s.pairs.end(), [](const EigenPair& p) {
    return std::abs(p.lambda - 3.0) < 1e-10 && std::abs(p.x[0]) < 1e-12;
  });
  EXPECT_TRUE(has);
  EXPECT_THROW(eigenvalues_dim2(unit_tensor(3, 3)), UnsupportedError);
}

TEST(Diagonal, Spectrum) {
  const auto s = diagonal_spectrum(diagonal_tensor(3, VectorXc{{2.0, Complex(0, 1)}}));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].lambda, Complex(0, 1));
  EXPECT_EQ(s[1].x, (VectorXc{{0.0, 1.0}}));
  EXPECT_THROW(diagonal_spectrum(fixtures::ex42_A()), UnsupportedError);
}

TEST(SpectrumClaims, Audits) {
  const auto a = spectrum_theorem_check(fixtures::ex42_A(), SpectrumClaim::idempotent_01);
  EXPECT_FALSE(a.pass);
  ASSERT_EQ(a.violators.size(), 1u);
  EXPECT_NEAR(a.violators[0].real(), 121.0, 1e-6);
  const auto b = spectrum_theorem_check(fixtures::ex42_B(), SpectrumClaim::idempotent_01);
  ASSERT_EQ(b.violators.size(), 1u);
  EXPECT_NEAR(b.violators[0].real(), 49.0, 1e-6);
  EXPECT_TRUE(spectrum_theorem_check(diagonal_tensor(3, VectorXc{{1.0, 1.0, 0.0}}), SpectrumClaim::idempotent_01).pass);
  EXPECT_TRUE(spectrum_theorem_check(diagonal_tensor(3, VectorXc{{-1.0}}), SpectrumClaim::kt_roots, 2).pass);
  EXPECT_FALSE(spectrum_theorem_check(diagonal_tensor(3, VectorXc{{-1.0}}), SpectrumClaim::idempotent_01).pass);
  EXPECT_TRUE(spectrum_theorem_check(diagonal_tensor(2, VectorXc{{Complex(0, 1)}}), SpectrumClaim::matrix_k_idempotent, 4).pass);
  EXPECT_FALSE(spectrum_theorem_check(diagonal_tensor(2, VectorXc{{Complex(0, 1)}}), SpectrumClaim::matrix_k_idempotent, 2).pass);
  // Acts as the unit tensor without being diagonal: every direction is an eigenvector.
  const Tensor hidden_unit(Shape::square(3, 2), VectorXc{{1.0, 1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 1.0}});
  EXPECT_TRUE(eigenvalues_dim2(hidden_unit).continuum);
  EXPECT_THROW(spectrum_theorem_check(hidden_unit, SpectrumClaim::idempotent_01), UnsupportedError);
  EXPECT_THROW(spectrum_theorem_check(fixtures::ex41_A(), SpectrumClaim::idempotent_01), UnsupportedError);
}

TEST(GroupInverseSpectrum, DiagonalMatrix) {
  const auto r = group_inverse_spectrum_check(diagonal_tensor(2, VectorXc{{0.0, 2.0, 5.0, Complex(0, 1)}}), 3);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.pairs.size(), 4u);
  EXPECT_EQ(r.pairs[0].lambda, Complex(0));
  EXPECT_EQ(r.pairs[3].lambda, Complex(0, -1));
  EXPECT_LE(r.max_residual, 1e-12);
  EXPECT_THROW(group_inverse_spectrum_check(unit_tensor(3, 2), 3), ShapeError);
}
