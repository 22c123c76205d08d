#pragma once

// Constructions of generalized tensor inverses, the solver x = X . (b^[1/s])^(k-1),
// and the null-space chain checks.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tginv/tensor.hpp"
#include "tginv/verification.hpp"

namespace tginv {

/// 1/a for a != 0, else 0.
Complex pseudo_reciprocal(const Complex& a);

/// Diagonal order-k tensor with entries (d_i^+)^(1/(t-1)), principal root.
Tensor diag_one_inverse(const DiagonalSpec<Complex>& d, int k);

/// Same formula as diag_one_inverse; satisfies the {1}, {2} and {5} identities.
Tensor diag_group_inverse(const DiagonalSpec<Complex>& d, int k);

/// diag(d_i^(-1/(t-1))) as an order-2 tensor. Throws DomainError on a zero entry.
Tensor order2_inverse_of_diagonal(const DiagonalSpec<Complex>& d);

/// Pads G_sub (order k, l x r^(k-1)) to an n x m^(k-1) tensor; every entry outside
/// the leading sub-block is `fill`.
Tensor embed_one_inverse(const Tensor& g_sub, Index m, Index n, const Complex& fill = 0.0);

/// Block-diagonal tensor diag(G1, G2): G1 occupies the cells whose indices all lie in
/// the first block, G2 those whose indices all lie in the second, zeros elsewhere.
Tensor block_diagonal(const Tensor& g1, const Tensor& g2);

enum class BlockVariant { one, group };

Tensor diag_block_inverse(const Tensor& g1, const Tensor& g2, BlockVariant variant);

enum class PaddingVariant {
  row,     ///< A = (A1; 0): result (W X), X = fill
  column,  ///< A = (A1 0): result (W; Y), Y = fill
};

/// G1 is a {1}-inverse of A1; returns a {1}-inverse of the padded m x n^(t-1) tensor.
Tensor block_padding_inverse(const Tensor& g1, PaddingVariant variant, Index m, Index n,
                             const Complex& fill = 0.0);

enum class MatrixInverseKind { one, two };

/// Rank of M from a column-pivoted QR with relative pivot threshold `tol`.
Index numerical_rank(const MatrixXc& m, double tol = 1e-10);

/// Moore-Penrose inverse by rank factorization M = C F:
/// F^H (F F^H)^-1 (C^H C)^-1 C^H. It is both a {1}- and a {2}-inverse.
MatrixXc matrix_g_inverse(const MatrixXc& m, MatrixInverseKind kind = MatrixInverseKind::one);

/// Q^(kind) . G_core . P^T. If G_core is a kind-inverse of B then the result is a
/// kind-inverse of P B Q. Throws RankError if Q lacks full row rank and DomainError if
/// P is not a permutation matrix.
Tensor transform_inverse(const MatrixXc& p, const Tensor& g_core, const MatrixXc& q,
                         MatrixInverseKind kind = MatrixInverseKind::one);

/// Inverse of sum_i lambda_i e_i (x) alpha_i (x) ... (x) alpha_i (order t, leading m) as
/// (A^T)^(kind) D^(kind)_k B^T. Throws RankError if the alphas are dependent.
Tensor rank_decomp_ginv(const VectorXc& lambdas, std::span<const VectorXc> alphas, Index m,
                        int order, MatrixInverseKind kind, int k);

struct SolveResult {
  VectorXc x;
  /// max|A . x^(t-1) - b| / max(1, max|b|)
  double residual = 0;
};

/// x = X . (b^[1/s])^(k-1) with the principal root.
SolveResult solve_via_ginv(const Tensor& a, const Tensor& x, const VectorXc& b);

/// A vector x with A . x^(t-1) ~ 0.
struct NullWitness {
  VectorXc x;
  double residual = 0;

  /// Throws WitnessError when x is zero or |A . x^(t-1)| exceeds tol.
  static NullWitness certify(const Tensor& a, const VectorXc& x, double tol = 1e-9);
};

enum class NullChains { two, five, both };

struct NullChainReport {
  struct Chain {
    std::string name;
    bool evaluated = false;
    double value = 0;  ///< max-abs of the vector that should vanish
    bool pass = true;
    std::string note;
  };
  std::vector<Chain> chains;
  bool pass = true;
};

/// Range/null chains for an inverse X of A, principal branch:
///   (5) A . (X . (x^[1/s])^(k-1))^(t-1) = 0 for x in N(A), X a {5}-inverse;
///   (6) X . (z^[s])^(k-1) = 0 for z in N(AX), X a {2}-inverse;
///   (7) X . x^(k-1) = 0 for x in N(A), X a {2}- and {5}-inverse.
/// `two` runs (6), `five` runs (5), `both` runs all three. Without `ax_null` chain (6)
/// tries w.x itself and is skipped if that is not in N(AX).
NullChainReport null_chain_check(const Tensor& a, const Tensor& x, NullChains chains,
                                 const NullWitness& w, double tol = 1e-9,
                                 const std::optional<VectorXc>& ax_null = std::nullopt);

}  // namespace tginv
