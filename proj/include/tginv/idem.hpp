#pragma once

// Idempotence and k-T-idempotence of homogeneous maps, checked by nested
// application so that powers A^k are never materialized.

#include <optional>
#include <string>
#include <vector>

#include "tginv/homogeneous_map.hpp"
#include "tginv/verification.hpp"

namespace tginv {

struct IdempotenceReport {
  std::string claim;  ///< "idempotent" or "k-T-idempotent"
  int k = 1;
  VerificationReport check;

  bool pass() const { return check.pass; }
};

/// A . w^(t-1) = A . y^(t-1) with w = (A . y^(t-1))^[1/(t-1)]. The kind field of spec
/// is ignored.
IdempotenceReport is_idempotent(const HomogeneousMap& a, const VerificationSpec& spec);
IdempotenceReport is_idempotent(const Tensor& a, const VerificationSpec& spec);

/// v_0 = y^[1/s], s = (t-1)^(k-1); v_{j+1} = A . v_j^(t-1); v_k = A . y^(t-1).
IdempotenceReport is_k_t_idempotent(const HomogeneousMap& a, int k, const VerificationSpec& spec);
IdempotenceReport is_k_t_idempotent(const Tensor& a, int k, const VerificationSpec& spec);

struct PropagationReport {
  bool precondition = false;  ///< k = 2 held under the all-branches policy
  std::string note;
  std::vector<IdempotenceReport> by_k;
  bool pass = false;
};

/// Checks T-idempotence (k = 2) under all branches, then k = 3..kmax under the same policy.
PropagationReport t_implies_k_check(const HomogeneousMap& a, int kmax, VerificationSpec spec);

struct SelfInverseReport {
  IdempotenceReport t_idempotent;
  IdempotenceReport idempotent;
  std::optional<VerificationReport> two;  ///< A is a {2}-inverse of itself
  std::optional<VerificationReport> one;  ///< A is a {1}-inverse of itself
  std::optional<double> solver_residual;
  bool pass = true;
};

/// Hypotheses are tested under all branches; conclusions use spec's policy.
SelfInverseReport self_inverse_check(const Tensor& a, const VerificationSpec& spec);

/// C = A X evaluated functionally. kind_held = one: C must be idempotent;
/// kind_held = two: C must be T-idempotent.
IdempotenceReport product_idempotence_check(const Tensor& a, const Tensor& x, GinvKind kind_held,
                                            const VerificationSpec& spec);

}  // namespace tginv
