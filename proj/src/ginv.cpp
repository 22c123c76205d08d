#include "tginv/ginv.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>

#include "tginv/hadamard.hpp"

namespace tginv {

namespace {

double max_abs(const VectorXc& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

void require_order(const Tensor& t, int min_order, const char* what) {
  if (t.order() < min_order) {
    throw ShapeError(std::string(what) + ": needs order >= " + std::to_string(min_order) + ", got " +
                     t.shape().to_string());
  }
}

Tensor diag_root_inverse(const DiagonalSpec<Complex>& d, int k, const char* what) {
  if (d.order < 2) throw ShapeError(std::string(what) + ": diagonal tensor must have order >= 2");
  if (k < 2) throw ShapeError(std::string(what) + ": target order must be >= 2");
  const Rational root(1, d.order - 1);
  VectorXc g(d.diag.size());
  for (Index i = 0; i < g.size(); ++i) g[i] = principal_power(pseudo_reciprocal(d.diag[i]), root);
  return DiagonalSpec<Complex>{k, g}.realize();
}

bool is_identity(const MatrixXc& m) {
  return m.rows() == m.cols() && m == MatrixXc::Identity(m.rows(), m.cols());
}

bool is_permutation(const MatrixXc& p) {
  if (p.rows() != p.cols()) return false;
  for (Index i = 0; i < p.rows(); ++i) {
    for (Index j = 0; j < p.cols(); ++j)
      if (p(i, j) != Complex(0) && p(i, j) != Complex(1)) return false;
  }
  const MatrixXc ones = p.cwiseAbs().cast<Complex>();
  for (Index i = 0; i < p.rows(); ++i) {
    if (ones.row(i).sum() != Complex(1) || ones.col(i).sum() != Complex(1)) return false;
  }
  return true;
}

}  // namespace

Complex pseudo_reciprocal(const Complex& a) {
  if (a.real() == 0.0 && a.imag() == 0.0) return 0.0;
  return 1.0 / a;
}

Tensor diag_one_inverse(const DiagonalSpec<Complex>& d, int k) {
  return diag_root_inverse(d, k, "diag_one_inverse");
}

Tensor diag_group_inverse(const DiagonalSpec<Complex>& d, int k) {
  return diag_root_inverse(d, k, "diag_group_inverse");
}

Tensor order2_inverse_of_diagonal(const DiagonalSpec<Complex>& d) {
  if (d.order < 2) throw ShapeError("order2_inverse_of_diagonal: order must be >= 2");
  const Rational root(-1, d.order - 1);
  VectorXc g(d.diag.size());
  for (Index i = 0; i < g.size(); ++i) {
    if (d.diag[i] == Complex(0)) {
      throw DomainError("order2_inverse_of_diagonal: diagonal entry " + std::to_string(i) + " is zero");
    }
    g[i] = principal_power(d.diag[i], root);
  }
  return DiagonalSpec<Complex>{2, g}.realize();
}

Tensor embed_one_inverse(const Tensor& g_sub, Index m, Index n, const Complex& fill) {
  require_order(g_sub, 2, "embed_one_inverse");
  const Index l = g_sub.leading_dim();
  const Index r = g_sub.trailing_dim();
  if (l > n || r > m) {
    throw ShapeError("embed_one_inverse: block " + g_sub.shape().to_string() + " does not fit in " +
                     std::to_string(n) + " x " + std::to_string(m) + "^(k-1)");
  }
  const Shape shape(g_sub.order(), n, m);
  VectorXc e = VectorXc::Constant(shape.entry_count(), fill);
  std::vector<Index> idx(g_sub.order(), 0);
  for (Index L = 0; L < e.size(); ++L) {
    if (idx[0] < l && std::all_of(idx.begin() + 1, idx.end(), [r](Index j) { return j < r; })) {
      e[L] = g_sub(std::span<const Index>(idx));
    }
    std::size_t pos = idx.size();
    while (pos-- > 0) {
      if (++idx[pos] < (pos == 0 ? n : m)) break;
      idx[pos] = 0;
    }
  }
  return Tensor(shape, std::move(e));
}

Tensor block_diagonal(const Tensor& g1, const Tensor& g2) {
  require_order(g1, 2, "block_diagonal");
  if (g1.order() != g2.order()) {
    throw ShapeError("block_diagonal: blocks have orders " + std::to_string(g1.order()) + " and " +
                     std::to_string(g2.order()));
  }
  const Index n1 = g1.leading_dim(), m1 = g1.trailing_dim();
  const Index n = n1 + g2.leading_dim(), m = m1 + g2.trailing_dim();
  const Shape shape(g1.order(), n, m);
  VectorXc e = VectorXc::Zero(shape.entry_count());
  std::vector<Index> idx(g1.order(), 0), local(g1.order());
  for (Index L = 0; L < e.size(); ++L) {
    const bool first = idx[0] < n1 && std::all_of(idx.begin() + 1, idx.end(), [m1](Index j) { return j < m1; });
    const bool second = idx[0] >= n1 && std::all_of(idx.begin() + 1, idx.end(), [m1](Index j) { return j >= m1; });
    if (first) {
      e[L] = g1(std::span<const Index>(idx));
    } else if (second) {
      local[0] = idx[0] - n1;
      for (std::size_t j = 1; j < idx.size(); ++j) local[j] = idx[j] - m1;
      e[L] = g2(std::span<const Index>(local));
    }
    std::size_t pos = idx.size();
    while (pos-- > 0) {
      if (++idx[pos] < (pos == 0 ? n : m)) break;
      idx[pos] = 0;
    }
  }
  return Tensor(shape, std::move(e));
}

Tensor diag_block_inverse(const Tensor& g1, const Tensor& g2, BlockVariant variant) {
  if (variant == BlockVariant::group && (!g1.shape().is_square() || !g2.shape().is_square())) {
    throw ShapeError("diag_block_inverse: group variant needs square blocks");
  }
  return block_diagonal(g1, g2);
}

Tensor block_padding_inverse(const Tensor& g1, PaddingVariant variant, Index m, Index n,
                             const Complex& fill) {
  require_order(g1, 2, "block_padding_inverse");
  if (variant == PaddingVariant::row && g1.leading_dim() != n) {
    throw ShapeError("block_padding_inverse(row): W must have leading dimension " + std::to_string(n) +
                     ", got " + g1.shape().to_string());
  }
  if (variant == PaddingVariant::column && g1.trailing_dim() != m) {
    throw ShapeError("block_padding_inverse(column): W must have trailing dimension " +
                     std::to_string(m) + ", got " + g1.shape().to_string());
  }
  return embed_one_inverse(g1, m, n, fill);
}

Index numerical_rank(const MatrixXc& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<MatrixXc> qr(m);
  qr.setThreshold(tol);
  return qr.rank();
}

MatrixXc matrix_g_inverse(const MatrixXc& m, MatrixInverseKind) {
  const Index rows = m.rows(), cols = m.cols();
  if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0) return MatrixXc::Zero(cols, rows);
  Eigen::ColPivHouseholderQR<MatrixXc> qr(m);
  qr.setThreshold(1e-10);
  const Index r = qr.rank();
  // M P = Q R, so M = C F with C = Q_r (orthonormal columns) and F = R_r P^T.
  const MatrixXc c = qr.householderQ() * MatrixXc::Identity(rows, r);
  const MatrixXc rr = qr.matrixR().topRows(r).triangularView<Eigen::Upper>();
  const MatrixXc f = rr * qr.colsPermutation().transpose();
  const MatrixXc ffh = f * f.adjoint();
  const MatrixXc chc = c.adjoint() * c;
  return f.adjoint() * ffh.inverse() * chc.inverse() * c.adjoint();
}

Tensor transform_inverse(const MatrixXc& p, const Tensor& g_core, const MatrixXc& q,
                         MatrixInverseKind kind) {
  require_order(g_core, 2, "transform_inverse");
  if (!is_permutation(p)) throw DomainError("transform_inverse: P is not a permutation matrix");
  if (numerical_rank(q) != q.rows()) {
    throw RankError("transform_inverse: Q (" + std::to_string(q.rows()) + " x " +
                    std::to_string(q.cols()) + ") does not have full row rank");
  }
  if (g_core.leading_dim() != q.rows() || g_core.trailing_dim() != p.rows()) {
    throw ShapeError("transform_inverse: core inverse " + g_core.shape().to_string() + " must be " +
                     std::to_string(q.rows()) + " x " + std::to_string(p.rows()) + "^(k-1)");
  }
  if (is_identity(p) && is_identity(q)) return g_core;
  const Tensor qg = Tensor::from_matrix(matrix_g_inverse(q, kind));
  const Tensor pt = Tensor::from_matrix(MatrixXc(p.transpose()));
  return general_product(general_product(qg, g_core), pt);
}

Tensor rank_decomp_ginv(const VectorXc& lambdas, std::span<const VectorXc> alphas, Index m,
                        int order, MatrixInverseKind kind, int k) {
  const Index r = lambdas.size();
  if (r == 0 || static_cast<Index>(alphas.size()) != r) {
    throw ShapeError("rank_decomp_ginv: need one vector per weight");
  }
  if (r > m) throw ShapeError("rank_decomp_ginv: rank exceeds the leading dimension");
  const Index n = alphas[0].size();
  MatrixXc amat(n, r);
  for (Index i = 0; i < r; ++i) {
    if (alphas[i].size() != n) throw ShapeError("rank_decomp_ginv: vectors differ in length");
    amat.col(i) = alphas[i];
  }
  if (numerical_rank(amat) != r) throw RankError("rank_decomp_ginv: the vectors are linearly dependent");
  const Tensor d_inv = diag_one_inverse(DiagonalSpec<Complex>{order, lambdas}, k);
  const Tensor at_inv = Tensor::from_matrix(matrix_g_inverse(amat.transpose(), kind));
  const Tensor bt = Tensor::from_matrix(MatrixXc(MatrixXc::Identity(r, m)));
  return general_product(general_product(at_inv, d_inv), bt);
}

SolveResult solve_via_ginv(const Tensor& a, const Tensor& x, const VectorXc& b) {
  require_order(a, 2, "solve_via_ginv");
  require_order(x, 2, "solve_via_ginv");
  if (x.leading_dim() != a.trailing_dim() || x.trailing_dim() != a.leading_dim()) {
    throw ShapeError("solve_via_ginv: X " + x.shape().to_string() + " does not chain with A " +
                     a.shape().to_string());
  }
  if (b.size() != a.leading_dim()) throw ShapeError("solve_via_ginv: b has the wrong length");
  const std::int64_t s = static_cast<std::int64_t>(a.order() - 1) * (x.order() - 1);
  SolveResult out;
  out.x = tginv::apply(x, principal_hadamard_power(b, Rational::reciprocal(s)));
  out.residual = relative_residual(tginv::apply(a, out.x), b);
  return out;
}

NullWitness NullWitness::certify(const Tensor& a, const VectorXc& x, double tol) {
  if (x.size() != a.trailing_dim()) throw ShapeError("null witness has the wrong length");
  const double scale = max_abs(x);
  if (scale == 0.0) throw WitnessError("null witness is the zero vector");
  NullWitness w{x, 0.0};
  w.residual = max_abs(tginv::apply(a, x)) / std::max(1.0, std::pow(scale, a.order() - 1));
  if (!(w.residual <= tol)) {
    throw WitnessError("null witness: |A . x^(t-1)| = " + std::to_string(w.residual) +
                       " exceeds tolerance");
  }
  return w;
}

NullChainReport null_chain_check(const Tensor& a, const Tensor& x, NullChains chains,
                                 const NullWitness& w, double tol,
                                 const std::optional<VectorXc>& ax_null) {
  require_order(a, 2, "null_chain_check");
  require_order(x, 2, "null_chain_check");
  if (x.leading_dim() != a.trailing_dim() || x.trailing_dim() != a.leading_dim()) {
    throw ShapeError("null_chain_check: X " + x.shape().to_string() + " does not chain with A " +
                     a.shape().to_string());
  }
  if (!(max_abs(tginv::apply(a, w.x)) <= tol * std::max(1.0, std::pow(max_abs(w.x), a.order() - 1)))) {
    throw WitnessError("null_chain_check: witness is not in N(A)");
  }
  const std::int64_t s = static_cast<std::int64_t>(a.order() - 1) * (x.order() - 1);
  const auto ax = [&](const VectorXc& v) { return tginv::apply(a, tginv::apply(x, v)); };

  NullChainReport report;
  const auto add = [&](NullChainReport::Chain c) {
    report.pass = report.pass && c.pass;
    report.chains.push_back(std::move(c));
  };

  if (chains != NullChains::two) {
    NullChainReport::Chain c;
    c.name = "5";
    c.evaluated = true;
    c.value = max_abs(ax(principal_hadamard_power(w.x, Rational::reciprocal(s))));
    c.pass = c.value <= tol;
    add(c);
  }
  if (chains != NullChains::five) {
    NullChainReport::Chain c;
    c.name = "6";
    const VectorXc z = ax_null.value_or(w.x);
    if (z.size() != a.leading_dim()) {
      c.note = "no N(AX) witness of length " + std::to_string(a.leading_dim());
    } else if (!(max_abs(ax(z)) <= tol)) {
      if (ax_null) throw WitnessError("null_chain_check: supplied vector is not in N(AX)");
      c.note = "witness is not in N(AX); supply one to evaluate";
    } else {
      c.evaluated = true;
      c.value = max_abs(tginv::apply(x, principal_hadamard_power(z, Rational(s))));
      c.pass = c.value <= tol;
    }
    add(c);
  }
  if (chains == NullChains::both) {
    NullChainReport::Chain c;
    c.name = "7";
    if (w.x.size() != a.leading_dim()) {
      c.note = "needs a square A";
    } else {
      c.evaluated = true;
      c.value = max_abs(tginv::apply(x, w.x));
      c.pass = c.value <= tol;
    }
    add(c);
  }
  return report;
}

}  // namespace tginv
