#pragma once

// Componentwise (Hadamard) powers x^[r] for rational r over the complex field.
//
// For fractional r = p/q the power is multivalued: each nonzero component has q
// admissible values, principal(x_i^r) * w^j with w = exp(2 pi i / q). A
// BranchPolicy says whether to use only the principal value or to enumerate
// every componentwise assignment.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "tginv/errors.hpp"
#include "tginv/tensor.hpp"

namespace tginv {

/// p/q in lowest terms with q > 0.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  constexpr Rational() = default;
  Rational(std::int64_t p, std::int64_t q = 1) : num(p), den(q) {
    if (q == 0) throw DomainError("rational exponent with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rational reciprocal(std::int64_t s) { return Rational(1, s); }

  bool is_integer() const { return den == 1; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class BranchMode {
  principal,  ///< principal value only
  exists,     ///< an identity holds if some root assignment satisfies it
  all,        ///< an identity holds if every root assignment satisfies it
};

struct BranchPolicy {
  BranchMode mode = BranchMode::principal;
  /// Largest number of root assignments an exhaustive mode may enumerate.
  std::size_t cap = 4096;

  bool exhaustive() const { return mode != BranchMode::principal; }
};

inline const char* to_string(BranchMode mode) {
  switch (mode) {
    case BranchMode::principal:
      return "principal";
    case BranchMode::exists:
      return "exists";
    case BranchMode::all:
      return "all";
  }
  return "?";
}

/// w^j for w = exp(2 pi i / q), exact at quarter turns.
template <typename Real = double>
std::complex<Real> root_of_unity(std::int64_t j, std::int64_t q) {
  j %= q;
  if (j < 0) j += q;
  if ((4 * j) % q == 0) {
    switch ((4 * j) / q) {
      case 0:
        return {1, 0};
      case 1:
        return {0, 1};
      case 2:
        return {-1, 0};
      default:
        return {0, -1};
    }
  }
  return std::polar(Real(1), Real(2) * std::numbers::pi_v<Real> * Real(j) / Real(q));
}

/// Principal value of z^r: exp(r Log z), with 0^r = 0 for r > 0 and z^0 = 1.
template <typename Real>
std::complex<Real> principal_power(const std::complex<Real>& z, const Rational& r) {
  using C = std::complex<Real>;
  if (r.num == 0) return C(1);
  if (z == C(0)) {
    if (r.num < 0) throw DomainError("zero raised to the negative power " + r.to_string());
    return C(0);
  }
  if (r.is_integer()) {
    C base = r.num < 0 ? C(1) / z : z;
    std::int64_t e = r.num < 0 ? -r.num : r.num;
    C acc(1);
    while (e > 0) {
      if (e & 1) acc *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return acc;
  }
  const Real exponent = static_cast<Real>(r.num) / static_cast<Real>(r.den);
  if (z.imag() == Real(0)) {
    // -0 imaginary parts (e.g. from 1 / -1) stay on the principal side, arg = +pi.
    if (z.real() > Real(0)) return C(std::pow(z.real(), exponent), Real(0));
    return std::polar(std::pow(-z.real(), exponent), exponent * std::numbers::pi_v<Real>);
  }
  return std::polar(std::pow(std::abs(z), exponent), exponent * std::arg(z));
}

/// x^[r] componentwise, principal branch.
template <typename Derived>
auto principal_hadamard_power(const Eigen::MatrixBase<Derived>& x, const Rational& r) {
  using Scalar = typename Derived::Scalar;
  Vector<Scalar> out(x.size());
  for (Index i = 0; i < x.size(); ++i) out[i] = principal_power(Scalar(x[i]), r);
  return out;
}

/// Number of distinct componentwise assignments of x^[r] (zero components have one).
template <typename Derived>
std::size_t branch_count(const Eigen::MatrixBase<Derived>& x, const Rational& r,
                         std::size_t saturate = SIZE_MAX) {
  std::size_t count = 1;
  if (r.is_integer()) return count;
  const auto q = static_cast<std::size_t>(r.den);
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] == typename Derived::Scalar(0)) continue;
    if (count > saturate / q) return saturate;
    count *= q;
  }
  return count;
}

/// Every componentwise assignment of x^[r]; element 0 is the principal one.
/// Throws CapError when there are more than `cap` assignments.
template <typename Derived>
auto branch_hadamard_powers(const Eigen::MatrixBase<Derived>& x, const Rational& r, std::size_t cap) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  const Vector<Scalar> principal = principal_hadamard_power(x, r);
  const std::size_t count = branch_count(x, r, cap + 1);
  if (count > cap) {
    throw CapError("branch enumeration: more than " + std::to_string(cap) + " assignments of x^[" +
                   r.to_string() + "] for a length-" + std::to_string(x.size()) + " vector");
  }
  std::vector<Vector<Scalar>> out;
  out.reserve(count);
  if (r.is_integer()) {
    out.push_back(principal);
    return out;
  }
  std::vector<Index> free;
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] != Scalar(0)) free.push_back(i);
  std::vector<std::int64_t> digits(free.size(), 0);
  for (std::size_t b = 0; b < count; ++b) {
    Vector<Scalar> v = principal;
    for (std::size_t f = 0; f < free.size(); ++f) {
      if (digits[f] != 0) v[free[f]] *= root_of_unity<Real>(digits[f], r.den);
    }
    out.push_back(std::move(v));
    for (std::size_t f = free.size(); f-- > 0;) {
      if (++digits[f] < r.den) break;
      digits[f] = 0;
    }
  }
  return out;
}

/// x^[r] under `policy`: the principal vector alone, or every branch assignment.
template <typename Derived>
auto hadamard_power(const Eigen::MatrixBase<Derived>& x, const Rational& r, const BranchPolicy& policy) {
  using Scalar = typename Derived::Scalar;
  if (!policy.exhaustive()) return std::vector<Vector<Scalar>>{principal_hadamard_power(x, r)};
  return branch_hadamard_powers(x, r, policy.cap);
}

}  // namespace tginv
