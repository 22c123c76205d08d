#pragma once

// Sampling-based verification of functional tensor identities.
//
// Every identity checked here has the form lhs(y) = rhs(y) where each side may
// depend on a componentwise fractional power of some vector built from y. The
// BranchPolicy decides how those roots are quantified: principal value only,
// some assignment (exists), or every assignment (all).

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tginv/hadamard.hpp"
#include "tginv/homogeneous_map.hpp"
#include "tginv/tensor.hpp"

namespace tginv {

enum class GinvKind { one, two, five, group };

const char* to_string(GinvKind kind);

enum class Sampling {
  complex_box,  ///< re, im uniform in [-1, 1]
  real_box,     ///< re uniform in [-1, 1], im = 0
};

struct VerificationSpec {
  GinvKind kind = GinvKind::one;
  int samples = 100;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  Sampling sampling = Sampling::complex_box;
  BranchPolicy policy;
  /// Fixed sample vectors checked before the random ones.
  std::vector<VectorXc> probes;
};

/// Which root assignment each side used for one sample (0 = principal).
struct BranchChoice {
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  std::size_t lhs_count = 1;
  std::size_t rhs_count = 1;
};

struct Witness {
  std::size_t sample = 0;
  std::string identity;
  VectorXc y;
  VectorXc lhs;
  VectorXc rhs;
  BranchChoice branch;
  double residual = 0;
};

struct VerificationReport {
  std::string label;
  BranchPolicy policy;
  bool pass = true;
  std::size_t samples_run = 0;
  double max_residual = 0;
  /// Lowest-indexed failing sample.
  std::optional<Witness> witness;
  std::vector<double> residuals;
  std::vector<BranchChoice> branches;

  std::size_t failures(double tol) const;
};

/// One side of an identity. With a radicand the side is eval(root) for the roots of
/// radicand^[exponent]; without one it is the fixed vector `value`.
struct IdentitySide {
  std::optional<VectorXc> radicand;
  Rational exponent;
  std::function<VectorXc(const VectorXc&)> eval;
  VectorXc value;

  static IdentitySide fixed(VectorXc v);
  static IdentitySide rooted(VectorXc radicand, Rational exponent,
                             std::function<VectorXc(const VectorXc&)> eval);
};

struct IdentityOutcome {
  double residual = 0;
  VectorXc lhs;
  VectorXc rhs;
  BranchChoice branch;
};

/// max|lhs - rhs| / max(1, max|rhs|).
double relative_residual(const VectorXc& lhs, const VectorXc& rhs);

/// Evaluates lhs = rhs under the policy's quantifier. The returned residual is the
/// principal residual, the best residual (exists) or the worst residual (all).
IdentityOutcome evaluate_identity(const IdentitySide& lhs, const IdentitySide& rhs,
                                  const BranchPolicy& policy);

/// Draws one sample vector of length `dim`.
VectorXc draw_sample(std::mt19937_64& rng, Index dim, Sampling sampling);

/// Runs probes then random samples of length `dim` through `build`, which maps a sample
/// y to the two sides of the identity.
VerificationReport run_identity_check(
    const std::string& label, Index dim, const VerificationSpec& spec,
    const std::function<std::pair<IdentitySide, IdentitySide>(const VectorXc&)>& build);

/// Checks that X (order k, n x m^(k-1)) is an order-k {1}, {2}, {5} or group inverse of
/// A (order t, m x n^(t-1)), using nested application only.
VerificationReport verify_inverse(const Tensor& a, const Tensor& x, const VerificationSpec& spec);

/// Combines reports of several identities: pass iff all pass, residual is the maximum,
/// witness is the first failing report's.
VerificationReport merge_reports(const std::string& label, const std::vector<VerificationReport>& parts);

}  // namespace tginv
