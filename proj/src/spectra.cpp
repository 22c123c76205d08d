#include "tginv/spectra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "tginv/ginv.hpp"
#include "tginv/hadamard.hpp"
#include "tginv/verification.hpp"

namespace tginv {

namespace {

constexpr double kDedupTol = 1e-8;
constexpr double kMemberTol = 1e-8;

Complex snap(Complex z) {
  const double scale = std::max(1.0, std::abs(z));
  if (std::abs(z.real()) <= 1e-9 * scale) z.real(0.0);
  if (std::abs(z.imag()) <= 1e-9 * scale) z.imag(0.0);
  return z;
}

/// Divides by the largest-modulus component so that component becomes 1.
VectorXc normalized(const VectorXc& x) {
  Index at = 0;
  x.cwiseAbs().maxCoeff(&at);
  VectorXc out = x / x[at];
  for (Index i = 0; i < out.size(); ++i) out[i] = snap(out[i]);
  out[at] = 1.0;
  return out;
}

void require_square(const Tensor& a, const char* what) {
  if (a.order() < 2 || !a.shape().is_square()) {
    throw ShapeError(std::string(what) + ": needs a square tensor, got " + a.shape().to_string());
  }
}

/// Distance from z to the nearest N-th root of unity.
double distance_to_unit_roots(const Complex& z, std::int64_t n) {
  const double turns = std::arg(z) * static_cast<double>(n) / (2 * std::numbers::pi);
  const auto j = static_cast<std::int64_t>(std::llround(turns));
  return std::abs(z - root_of_unity(j, n));
}

}  // namespace

double eigen_residual(const Tensor& a, const Complex& lambda, const VectorXc& x) {
  require_square(a, "eigen_residual");
  if (x.size() != a.trailing_dim()) throw ShapeError("eigen_residual: vector has the wrong length");
  const double scale = x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) throw DomainError("eigen_residual: eigenvector must be nonzero");
  const VectorXc xs = x / scale;
  const VectorXc rhs = lambda * principal_hadamard_power(xs, Rational(a.order() - 1));
  return relative_residual(tginv::apply(a, xs), rhs);
}

EigenCheck verify_eigenpair(const Tensor& a, const Complex& lambda, const VectorXc& x, double tol) {
  EigenCheck out;
  out.residual = eigen_residual(a, lambda, x);
  out.pass = out.residual <= tol;
  return out;
}

int PolyCoeffs::degree(double rel_tol) const {
  double big = 0;
  for (const Complex& z : c) big = std::max(big, std::abs(z));
  if (big == 0) return -1;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (std::abs(c[i]) > rel_tol * big) return i;
  return -1;
}

Complex PolyCoeffs::operator()(const Complex& z) const {
  Complex acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PolyRoots poly_roots(const PolyCoeffs& p) {
  const int d = p.degree();
  if (d < 0) throw DegenerateError("poly_roots: the polynomial is identically zero");
  if (d == 0) throw DegenerateError("poly_roots: constant polynomial has no roots");
  MatrixXc companion = MatrixXc::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -p.c[i] / p.c[d];
  Eigen::ComplexEigenSolver<MatrixXc> solver(companion, false);
  if (solver.info() != Eigen::Success) throw DegenerateError("poly_roots: eigenvalue iteration failed");

  PolyCoeffs dp;
  for (int i = 1; i <= d; ++i) dp.c.push_back(static_cast<double>(i) * p.c[i]);
  PolyRoots out;
  for (Index i = 0; i < d; ++i) {
    Complex z = solver.eigenvalues()[i];
    for (int step = 0; step < 5; ++step) {
      const Complex f = p(z);
      const Complex df = dp(z);
      if (df == Complex(0)) break;
      const Complex next = z - f / df;
      if (!(std::abs(p(next)) < std::abs(f))) break;
      z = next;
    }
    out.roots.push_back(z);
    out.residuals.push_back(std::abs(p(z)));
  }
  return out;
}

Dim2Spectrum eigenvalues_dim2(const Tensor& a) {
  if (a.order() < 2 || a.leading_dim() != 2 || a.trailing_dim() != 2) {
    throw UnsupportedError("eigenvalues_dim2: needs a 2 x 2^(t-1) tensor, got " + a.shape().to_string());
  }
  const int t = a.order();
  const Index tail = a.shape().trailing_count();
  // f_i(1, w) = sum_d c_{i,d} w^d, c_{i,d} summing entries with d trailing indices equal to 1.
  PolyCoeffs f1{std::vector<Complex>(t, 0.0)}, f2{std::vector<Complex>(t, 0.0)};
  for (Index L = 0; L < tail; ++L) {
    const int ones = std::popcount(static_cast<unsigned long long>(L));
    f1.c[ones] += a[L];
    f2.c[ones] += a[tail + L];
  }
  // f_1(1, w) w^(t-1) - f_2(1, w)
  PolyCoeffs g{std::vector<Complex>(2 * t - 1, 0.0)};
  for (int d = 0; d < t; ++d) {
    g.c[d + t - 1] += f1.c[d];
    g.c[d] -= f2.c[d];
  }
  const double scale = std::max(1.0, a.entries().cwiseAbs().maxCoeff());
  double g_max = 0;
  for (const Complex& z : g.c) g_max = std::max(g_max, std::abs(z));

  Dim2Spectrum out;
  if (g_max <= 1e-12 * scale) {
    out.continuum = true;
    return out;
  }

  std::vector<EigenPair> candidates;
  const auto consider = [&](const Complex& lambda, const VectorXc& x) {
    EigenPair pair{snap(lambda), normalized(x), 0.0};
    pair.residual = eigen_residual(a, pair.lambda, pair.x);
    if (pair.residual <= kDedupTol) candidates.push_back(pair);
  };
  if (g.degree() >= 1) {
    for (const Complex& w : poly_roots(g).roots) consider(f1(w), VectorXc{{1.0, w}});
  }
  if (std::abs(f1.c[t - 1]) <= 1e-12 * scale) consider(f2.c[t - 1], VectorXc{{0.0, 1.0}});

  for (const EigenPair& p : candidates) {
    auto same = std::find_if(out.pairs.begin(), out.pairs.end(), [&](const EigenPair& q) {
      return std::abs(q.lambda - p.lambda) <= kDedupTol * std::max(1.0, std::abs(p.lambda));
    });
    if (same == out.pairs.end()) {
      out.pairs.push_back(p);
    } else if (p.residual < same->residual) {
      *same = p;
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end(), [](const EigenPair& p, const EigenPair& q) {
    if (p.lambda.real() != q.lambda.real()) return p.lambda.real() < q.lambda.real();
    return p.lambda.imag() < q.lambda.imag();
  });
  return out;
}

std::vector<EigenPair> diagonal_spectrum(const Tensor& a) {
  const auto d = as_diagonal(a);
  if (!d) throw UnsupportedError("diagonal_spectrum: tensor is not diagonal");
  std::vector<EigenPair> out;
  for (Index i = 0; i < d->diag.size(); ++i) {
    VectorXc e = VectorXc::Zero(d->diag.size());
    e[i] = 1.0;
    out.push_back({d->diag[i], e, eigen_residual(a, d->diag[i], e)});
  }
  return out;
}

const char* to_string(SpectrumClaim claim) {
  switch (claim) {
    case SpectrumClaim::idempotent_01:
      return "idempotent-01";
    case SpectrumClaim::kt_roots:
      return "kT-roots";
    case SpectrumClaim::matrix_k_idempotent:
      return "matrix-k-idempotent";
  }
  return "?";
}

SpectrumReport spectrum_theorem_check(const Tensor& a, SpectrumClaim claim, int k) {
  SpectrumReport report;
  report.claim = to_string(claim);
  report.k = k;
  if (as_diagonal(a)) {
    report.spectrum = diagonal_spectrum(a);
  } else if (a.order() >= 2 && a.leading_dim() == 2 && a.trailing_dim() == 2) {
    Dim2Spectrum s = eigenvalues_dim2(a);
    if (s.continuum) throw UnsupportedError("spectrum_theorem_check: every direction is an eigenvector");
    report.spectrum = std::move(s.pairs);
  } else {
    throw UnsupportedError("spectrum_theorem_check: eigenvalues are enumerated only for diagonal "
                           "tensors and dimension 2, got " + a.shape().to_string());
  }

  std::int64_t roots = 1;
  if (claim == SpectrumClaim::kt_roots) {
    if (k < 1) throw DomainError("spectrum_theorem_check: k must be >= 1");
    for (int j = 0; j < k; ++j) roots *= a.order() - 1;
  } else if (claim == SpectrumClaim::matrix_k_idempotent) {
    if (k < 1) throw DomainError("spectrum_theorem_check: k must be >= 1");
    roots = k;
  }
  for (const EigenPair& p : report.spectrum) {
    bool member = std::abs(p.lambda) <= kMemberTol;
    if (claim == SpectrumClaim::idempotent_01) {
      member = member || std::abs(p.lambda - 1.0) <= kMemberTol;
    } else {
      member = member || distance_to_unit_roots(p.lambda, roots) <= kMemberTol;
    }
    if (!member) report.violators.push_back(p.lambda);
  }
  report.pass = report.violators.empty();
  return report;
}

GroupSpectrumReport group_inverse_spectrum_check(const Tensor& a, int k, double tol) {
  const auto d = a.order() == 2 ? as_diagonal(a) : std::nullopt;
  if (!d) throw ShapeError("group_inverse_spectrum_check: needs a diagonal matrix, got " + a.shape().to_string());
  const Tensor g = diag_group_inverse(*d, k);
  GroupSpectrumReport report;
  for (Index i = 0; i < d->diag.size(); ++i) {
    VectorXc e = VectorXc::Zero(d->diag.size());
    e[i] = 1.0;
    const Complex lambda = pseudo_reciprocal(d->diag[i]);
    EigenPair p{lambda, e, eigen_residual(g, lambda, e)};
    report.max_residual = std::max(report.max_residual, p.residual);
    report.pass = report.pass && p.residual <= tol;
    report.pairs.push_back(std::move(p));
  }
  return report;
}

}  // namespace tginv
