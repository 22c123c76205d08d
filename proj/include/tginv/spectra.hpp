#pragma once

// Tensor eigenpairs A . x^(t-1) = lambda x^[t-1]: verification, enumeration for
// dimension 2 and diagonal tensors, and membership audits of spectral claims.

#include <string>
#include <vector>

#include "tginv/tensor.hpp"

namespace tginv {

struct EigenPair {
  Complex lambda;
  VectorXc x;
  double residual = 0;
};

struct EigenCheck {
  bool pass = false;
  double residual = 0;
};

/// Relative max-abs residual of A . x^(t-1) - lambda x^[t-1], x scaled to max-abs 1.
/// Throws DomainError for x = 0.
double eigen_residual(const Tensor& a, const Complex& lambda, const VectorXc& x);

EigenCheck verify_eigenpair(const Tensor& a, const Complex& lambda, const VectorXc& x, double tol = 1e-8);

/// c[i] is the coefficient of z^i.
struct PolyCoeffs {
  std::vector<Complex> c;

  /// Index of the highest coefficient above `rel_tol` times the largest, or -1 if all vanish.
  int degree(double rel_tol = 1e-12) const;
  Complex operator()(const Complex& z) const;
};

struct PolyRoots {
  std::vector<Complex> roots;
  std::vector<double> residuals;  ///< |p(root)|
};

/// Companion-matrix eigenvalues refined by Newton steps. Throws DegenerateError for the
/// zero polynomial and for nonzero constants.
PolyRoots poly_roots(const PolyCoeffs& p);

struct Dim2Spectrum {
  std::vector<EigenPair> pairs;
  /// Every direction is an eigenvector; pairs is empty.
  bool continuum = false;
};

/// All eigenpairs of a 2 x 2^(t-1) tensor, one per distinct eigenvalue (1e-8),
/// eigenvectors scaled to max-abs 1.
Dim2Spectrum eigenvalues_dim2(const Tensor& a);

/// (d_i, e_i) for a diagonal tensor. Throws UnsupportedError otherwise.
std::vector<EigenPair> diagonal_spectrum(const Tensor& a);

enum class SpectrumClaim {
  idempotent_01,        ///< lambda in {0, 1}
  kt_roots,             ///< lambda^((t-1)^k) = 1 or lambda = 0
  matrix_k_idempotent,  ///< lambda^k = 1 or lambda = 0
};

const char* to_string(SpectrumClaim claim);

struct SpectrumReport {
  std::string claim;
  int k = 0;
  std::vector<EigenPair> spectrum;
  std::vector<Complex> violators;
  bool pass = true;
};

/// Enumerates the spectrum (diagonal tensors or dimension 2) and checks every eigenvalue
/// against the claimed set within 1e-8. Throws UnsupportedError when enumeration is not
/// available or every direction is an eigenvector.
SpectrumReport spectrum_theorem_check(const Tensor& a, SpectrumClaim claim, int k = 2);

struct GroupSpectrumReport {
  std::vector<EigenPair> pairs;  ///< (d_i^+, e_i) checked against the group inverse
  double max_residual = 0;
  bool pass = true;
};

/// For a diagonal matrix A = diag(d), checks that (d_i^+, e_i) are eigenpairs of its order-k
/// group inverse diag(d^+). Throws ShapeError if A is not a diagonal matrix.
GroupSpectrumReport group_inverse_spectrum_check(const Tensor& a, int k, double tol = 1e-12);

}  // namespace tginv
