#pragma once

// Dense m x n x ... x n complex tensors and the multilinear operations built on
// them: tensor-vector application, the general (Shao) tensor product, outer and
// Tucker products, and rank-one sums.
//
// Storage is row-major with the last index varying fastest, so the tensor
// A = (a_{i1 i2 ... it}) stores a_{i1...it} at ((i1*n + i2)*n + ...)*n + it.

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tginv/errors.hpp"

namespace tginv {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;
using VectorXc = Vector<Complex>;
using MatrixXc = Matrix<Complex>;

/// Largest number of entries any materialized tensor may hold.
inline constexpr Index kDefaultEntryCap = Index{1} << 26;

namespace detail {

// base^exp, or nullopt once the value passes `cap`.
inline std::optional<Index> capped_power(Index base, Index exp, Index cap) {
  Index value = 1;
  for (Index e = 0; e < exp; ++e) {
    if (base != 0 && value > cap / base) return std::nullopt;
    value *= base;
  }
  if (value > cap) return std::nullopt;
  return value;
}

inline Index checked_power(Index base, Index exp, Index cap, const char* what) {
  auto v = capped_power(base, exp, cap);
  if (!v) {
    throw CapError(std::string(what) + ": " + std::to_string(base) + "^" + std::to_string(exp) +
                   " exceeds the entry cap of " + std::to_string(cap));
  }
  return *v;
}

// Advances a little-endian-last odometer (last digit fastest). Returns false on wrap.
inline bool increment(std::vector<Index>& digits, Index radix) {
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (++*it < radix) return true;
    *it = 0;
  }
  return false;
}

template <typename Scalar>
bool is_finite(const Scalar& z) {
  if constexpr (Eigen::NumTraits<Scalar>::IsComplex) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  } else {
    return std::isfinite(z);
  }
}

}  // namespace detail

/// Shape of an order-t tensor with leading dimension m and trailing dimension n.
/// Order 1 is a length-m vector; its trailing dimension is recorded as 0.
class Shape {
 public:
  Shape(int order, Index leading, Index trailing, Index cap = kDefaultEntryCap)
      : order_(order), leading_(leading), trailing_(order == 1 ? 0 : trailing) {
    if (order < 1) throw ShapeError("tensor order must be >= 1, got " + std::to_string(order));
    if (leading < 1) throw ShapeError("leading dimension must be >= 1");
    if (order >= 2 && trailing < 1) throw ShapeError("trailing dimension must be >= 1");
    trailing_count_ = order == 1 ? 1 : detail::checked_power(trailing_, order - 1, cap, "shape");
    if (trailing_count_ > cap / leading_) {
      throw CapError("shape: " + std::to_string(leading_) + " x " + std::to_string(trailing_count_) +
                     " entries exceed the entry cap");
    }
  }

  static Shape vector(Index m) { return Shape(1, m, 0); }
  static Shape matrix(Index rows, Index cols) { return Shape(2, rows, cols); }
  static Shape square(int order, Index n) { return Shape(order, n, n); }

  int order() const { return order_; }
  Index leading_dim() const { return leading_; }
  Index trailing_dim() const { return trailing_; }
  /// n^(t-1): the number of entries per leading slice.
  Index trailing_count() const { return trailing_count_; }
  Index entry_count() const { return leading_ * trailing_count_; }
  bool is_square() const { return order_ >= 2 && leading_ == trailing_; }

  /// Extent of the 0-based axis `axis`.
  Index dim(int axis) const { return axis == 0 ? leading_ : trailing_; }

  friend bool operator==(const Shape& a, const Shape& b) {
    return a.order_ == b.order_ && a.leading_ == b.leading_ && a.trailing_ == b.trailing_;
  }

  std::string to_string() const {
    std::string s = "order " + std::to_string(order_) + " (" + std::to_string(leading_);
    for (int j = 1; j < order_; ++j) s += "x" + std::to_string(trailing_);
    return s + ")";
  }

 private:
  int order_;
  Index leading_;
  Index trailing_;
  Index trailing_count_ = 1;
};

/// L = ((i1*n + i2)*n + ...)*n + it for a 0-based multi-index.
inline Index index_linearize(std::span<const Index> idx, const Shape& shape) {
  if (static_cast<int>(idx.size()) != shape.order()) {
    throw IndexError("multi-index has " + std::to_string(idx.size()) + " components, tensor is " +
                     shape.to_string());
  }
  Index linear = 0;
  for (int j = 0; j < shape.order(); ++j) {
    const Index extent = shape.dim(j);
    if (idx[j] < 0 || idx[j] >= extent) {
      throw IndexError("index component " + std::to_string(j) + " = " + std::to_string(idx[j]) +
                       " out of range [0, " + std::to_string(extent) + ")");
    }
    linear = j == 0 ? idx[0] : linear * extent + idx[j];
  }
  return linear;
}

inline Index index_linearize(std::initializer_list<Index> idx, const Shape& shape) {
  return index_linearize(std::span<const Index>(idx.begin(), idx.size()), shape);
}

inline std::vector<Index> index_delinearize(Index linear, const Shape& shape) {
  if (linear < 0 || linear >= shape.entry_count()) {
    throw IndexError("linear index " + std::to_string(linear) + " out of range for " +
                     shape.to_string());
  }
  std::vector<Index> idx(shape.order());
  for (int j = shape.order() - 1; j >= 1; --j) {
    idx[j] = linear % shape.trailing_dim();
    linear /= shape.trailing_dim();
  }
  idx[0] = linear;
  return idx;
}

/// Immutable dense tensor over `Scalar` (normally std::complex<double>).
template <typename Scalar>
class BasicTensor {
 public:
  using ScalarType = Scalar;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;

  BasicTensor(Shape shape, Vector<Scalar> entries) : shape_(shape), entries_(std::move(entries)) {
    if (entries_.size() != shape_.entry_count()) {
      throw ShapeError("tensor " + shape_.to_string() + " needs " +
                       std::to_string(shape_.entry_count()) + " entries, got " +
                       std::to_string(entries_.size()));
    }
    for (Index i = 0; i < entries_.size(); ++i) {
      if (!detail::is_finite(entries_[i])) {
        throw DomainError("non-finite tensor entry at linear index " + std::to_string(i));
      }
    }
  }

  static BasicTensor zero(const Shape& shape) {
    return BasicTensor(shape, Vector<Scalar>::Zero(shape.entry_count()));
  }

  template <typename Derived>
  static BasicTensor from_vector(const Eigen::MatrixBase<Derived>& v) {
    return BasicTensor(Shape::vector(v.size()), Vector<Scalar>(v));
  }

  /// Order-2 tensor whose (i, j) entry is m(i, j).
  template <typename Derived>
  static BasicTensor from_matrix(const Eigen::MatrixBase<Derived>& m) {
    Vector<Scalar> e(m.rows() * m.cols());
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) e[i * m.cols() + j] = m(i, j);
    return BasicTensor(Shape::matrix(m.rows(), m.cols()), std::move(e));
  }

  const Shape& shape() const { return shape_; }
  int order() const { return shape_.order(); }
  Index leading_dim() const { return shape_.leading_dim(); }
  Index trailing_dim() const { return shape_.trailing_dim(); }
  Index size() const { return entries_.size(); }
  const Vector<Scalar>& entries() const { return entries_; }

  const Scalar& operator[](Index linear) const { return entries_[linear]; }
  Scalar operator()(std::span<const Index> idx) const { return entries_[index_linearize(idx, shape_)]; }
  Scalar operator()(std::initializer_list<Index> idx) const {
    return entries_[index_linearize(idx, shape_)];
  }

  /// The m x n matrix of an order-2 tensor.
  Matrix<Scalar> to_matrix() const {
    if (order() != 2) throw ShapeError("to_matrix needs an order-2 tensor, got " + shape_.to_string());
    Matrix<Scalar> m(leading_dim(), trailing_dim());
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) m(i, j) = entries_[i * m.cols() + j];
    return m;
  }

  friend bool operator==(const BasicTensor& a, const BasicTensor& b) {
    return a.shape_ == b.shape_ && a.entries_ == b.entries_;
  }

 private:
  Shape shape_;
  Vector<Scalar> entries_;
};

using Tensor = BasicTensor<Complex>;

/// Diagonal order-t tensor diag(d_1, ..., d_n): zero except at (i, i, ..., i).
template <typename Scalar>
struct DiagonalSpec {
  int order;
  Vector<Scalar> diag;

  BasicTensor<Scalar> realize() const {
    const Index n = diag.size();
    const Shape shape(order, n, n);
    Vector<Scalar> e = Vector<Scalar>::Zero(shape.entry_count());
    // Stride between consecutive diagonal cells: 1 + n + n^2 + ... + n^(t-1).
    Index stride = 0;
    for (int j = 0; j < order; ++j) stride = stride * n + 1;
    for (Index i = 0; i < n; ++i) e[i * stride] = diag[i];
    return BasicTensor<Scalar>(shape, std::move(e));
  }
};

enum class SpecialKind { unit, diagonal, zero };

template <typename Scalar = Complex>
BasicTensor<Scalar> make_special(SpecialKind kind, int order, Index dim,
                                 const std::optional<Vector<Scalar>>& diag = std::nullopt) {
  if ((kind == SpecialKind::diagonal) != diag.has_value()) {
    throw ShapeError("make_special: a diagonal is required exactly for kind=diagonal");
  }
  switch (kind) {
    case SpecialKind::zero:
      return BasicTensor<Scalar>::zero(Shape(order, dim, dim));
    case SpecialKind::unit:
      return DiagonalSpec<Scalar>{order, Vector<Scalar>::Ones(dim)}.realize();
    case SpecialKind::diagonal:
      if (diag->size() != dim) {
        throw ShapeError("make_special: diagonal has length " + std::to_string(diag->size()) +
                         ", expected " + std::to_string(dim));
      }
      return DiagonalSpec<Scalar>{order, *diag}.realize();
  }
  throw ShapeError("make_special: unknown kind");
}

template <typename Scalar = Complex>
BasicTensor<Scalar> unit_tensor(int order, Index dim) {
  return make_special<Scalar>(SpecialKind::unit, order, dim);
}

template <typename Derived>
auto diagonal_tensor(int order, const Eigen::MatrixBase<Derived>& diag) {
  using Scalar = typename Derived::Scalar;
  return DiagonalSpec<Scalar>{order, Vector<Scalar>(diag)}.realize();
}

/// The diagonal of `a` when `a` is square and every off-diagonal entry is exactly zero.
template <typename Scalar>
std::optional<DiagonalSpec<Scalar>> as_diagonal(const BasicTensor<Scalar>& a) {
  if (a.order() < 2 || !a.shape().is_square()) return std::nullopt;
  const Index n = a.leading_dim();
  Index stride = 0;
  for (int j = 0; j < a.order(); ++j) stride = stride * n + 1;
  Vector<Scalar> d(n);
  for (Index L = 0; L < a.size(); ++L) {
    if (L % stride == 0 && L / stride < n) {
      d[L / stride] = a[L];
    } else if (a[L] != Scalar(0)) {
      return std::nullopt;
    }
  }
  return DiagonalSpec<Scalar>{a.order(), std::move(d)};
}

namespace detail {

// out[i*P^(t-1) + lin(beta)] = sum_L a[i*N + L] * prod_j factor[l_j * P + beta_j],
// summed in ascending L. With P = 1 this is exactly tensor-vector application.
template <typename Scalar>
Vector<Scalar> contract_trailing(const BasicTensor<Scalar>& a, const Vector<Scalar>& factor,
                                 Index block, Index out_trailing_count) {
  const int arity = a.order() - 1;
  const Index n = a.trailing_dim();
  const Index per_row = a.shape().trailing_count();
  Vector<Scalar> out(a.leading_dim() * out_trailing_count);
  std::vector<Index> beta(arity, 0);
  std::vector<Index> ell(arity, 0);
  for (Index i = 0; i < a.leading_dim(); ++i) {
    std::fill(beta.begin(), beta.end(), 0);
    for (Index b = 0; b < out_trailing_count; ++b) {
      Scalar sum(0);
      std::fill(ell.begin(), ell.end(), 0);
      for (Index L = 0; L < per_row; ++L) {
        Scalar term = a[i * per_row + L];
        for (int j = 0; j < arity; ++j) term *= factor[ell[j] * block + beta[j]];
        sum += term;
        increment(ell, n);
      }
      out[i * out_trailing_count + b] = sum;
      increment(beta, block);
    }
  }
  return out;
}

}  // namespace detail

/// A . x^(t-1): the length-m vector with components sum a_{i i2...it} x_{i2} ... x_{it}.
/// For an order-1 tensor this is the tensor's own vector.
/// Call it qualified: for complex scalars ADL also finds std::apply.
template <typename Scalar, typename Derived>
Vector<Scalar> apply(const BasicTensor<Scalar>& a, const Eigen::MatrixBase<Derived>& x) {
  if (a.order() == 1) return a.entries();
  if (x.size() != a.trailing_dim()) {
    throw ShapeError("apply: vector length " + std::to_string(x.size()) + " does not match " +
                     a.shape().to_string());
  }
  return detail::contract_trailing(a, Vector<Scalar>(x), 1, 1);
}

/// General tensor product AB of A (order t, m x n^(t-1)) and B (order k, n x p^(k-1)):
/// (AB)_{i a1 ... a_{t-1}} = sum a_{i i2 ... it} b_{i2 a1} ... b_{it a_{t-1}}, each a_j in [p]^(k-1).
/// The result has order (t-1)(k-1)+1 and shape m x p^((t-1)(k-1)).
template <typename Scalar>
BasicTensor<Scalar> general_product(const BasicTensor<Scalar>& a, const BasicTensor<Scalar>& b,
                                    Index cap = kDefaultEntryCap) {
  if (a.order() == 1) return a;
  if (a.trailing_dim() != b.leading_dim()) {
    throw ShapeError("general_product: " + a.shape().to_string() + " times " + b.shape().to_string() +
                     " (trailing " + std::to_string(a.trailing_dim()) + " != leading " +
                     std::to_string(b.leading_dim()) + ")");
  }
  const int out_order = (a.order() - 1) * (b.order() - 1) + 1;
  const Index block = b.shape().trailing_count();  // p^(k-1)
  const Index out_tail = detail::checked_power(block, a.order() - 1, cap,
                                               "general_product (use nested application instead)");
  if (out_tail > cap / a.leading_dim()) {
    throw CapError("general_product: result exceeds the entry cap (use nested application instead)");
  }
  const Shape out_shape = out_order == 1 ? Shape::vector(a.leading_dim())
                                         : Shape(out_order, a.leading_dim(), b.trailing_dim(), cap);
  return BasicTensor<Scalar>(out_shape, detail::contract_trailing(a, b.entries(), block, out_tail));
}

/// alpha_1 (x) alpha_2 (x) ... (x) alpha_t. Vectors 2..t must share one length.
template <typename Scalar>
BasicTensor<Scalar> outer_product(std::span<const Vector<Scalar>> vectors) {
  if (vectors.empty()) throw ShapeError("outer_product: needs at least one vector");
  const int order = static_cast<int>(vectors.size());
  const Index n = order >= 2 ? vectors[1].size() : 0;
  for (int j = 2; j < order; ++j) {
    if (vectors[j].size() != n) throw ShapeError("outer_product: trailing vectors differ in length");
  }
  const Shape shape(order, vectors[0].size(), n);
  Vector<Scalar> e(shape.entry_count());
  std::vector<Index> idx(order, 0);
  for (Index L = 0; L < e.size(); ++L) {
    Scalar v = vectors[0][idx[0]];
    for (int j = 1; j < order; ++j) v *= vectors[j][idx[j]];
    e[L] = v;
    // Odometer over mixed radix (m, n, ..., n).
    for (int j = order - 1; j >= 0; --j) {
      if (++idx[j] < shape.dim(j)) break;
      idx[j] = 0;
    }
  }
  return BasicTensor<Scalar>(shape, std::move(e));
}

template <typename Scalar>
BasicTensor<Scalar> outer_product(std::initializer_list<Vector<Scalar>> vectors) {
  return outer_product(std::span<const Vector<Scalar>>(vectors.begin(), vectors.size()));
}

/// Tucker product (B_1, ..., B_t) . A with a'_{j1...jt} = sum (B_1)_{j1 i1} ... (B_t)_{jt it} a_{i1...it}.
/// The rows of B_2, ..., B_t must agree so that the result stays in the m x n x ... x n family.
template <typename Scalar>
BasicTensor<Scalar> tucker_apply(std::span<const Matrix<Scalar>> factors, const BasicTensor<Scalar>& a) {
  const int order = a.order();
  if (static_cast<int>(factors.size()) != order) {
    throw ShapeError("tucker_apply: need one matrix per mode (" + std::to_string(order) + ")");
  }
  std::vector<Index> dims(order);
  for (int j = 0; j < order; ++j) {
    dims[j] = a.shape().dim(j);
    if (factors[j].cols() != dims[j]) {
      throw ShapeError("tucker_apply: matrix " + std::to_string(j) + " has " +
                       std::to_string(factors[j].cols()) + " columns, mode size is " +
                       std::to_string(dims[j]));
    }
  }
  for (int j = 2; j < order; ++j) {
    if (factors[j].rows() != factors[1].rows()) {
      throw ShapeError("tucker_apply: result would not have equal trailing dimensions");
    }
  }

  // Mode-by-mode products on a general-extent buffer.
  std::vector<Scalar> data(a.entries().data(), a.entries().data() + a.size());
  for (int mode = 0; mode < order; ++mode) {
    Index outer = 1, inner = 1;
    for (int j = 0; j < mode; ++j) outer *= dims[j];
    for (int j = mode + 1; j < order; ++j) inner *= dims[j];
    const Matrix<Scalar>& f = factors[mode];
    std::vector<Scalar> next(static_cast<std::size_t>(outer * f.rows() * inner), Scalar(0));
    for (Index o = 0; o < outer; ++o)
      for (Index r = 0; r < f.rows(); ++r)
        for (Index c = 0; c < dims[mode]; ++c) {
          const Scalar w = f(r, c);
          const Scalar* src = &data[(o * dims[mode] + c) * inner];
          Scalar* dst = &next[(o * f.rows() + r) * inner];
          for (Index q = 0; q < inner; ++q) dst[q] += w * src[q];
        }
    dims[mode] = f.rows();
    data = std::move(next);
  }
  const Shape shape(order, dims[0], order >= 2 ? dims[1] : 0);
  return BasicTensor<Scalar>(shape, Eigen::Map<const Vector<Scalar>>(data.data(), data.size()));
}

template <typename Scalar>
BasicTensor<Scalar> tucker_apply(std::initializer_list<Matrix<Scalar>> factors,
                                 const BasicTensor<Scalar>& a) {
  return tucker_apply(std::span<const Matrix<Scalar>>(factors.begin(), factors.size()), a);
}

/// sum_i lambda_i e_i (x) alpha_i (x) ... (x) alpha_i, an order-`order` tensor with leading dim m.
template <typename Scalar>
BasicTensor<Scalar> from_rank_decomposition(const Vector<Scalar>& lambdas,
                                            std::span<const Vector<Scalar>> alphas, Index m,
                                            int order) {
  const Index r = lambdas.size();
  if (static_cast<Index>(alphas.size()) != r) {
    throw ShapeError("from_rank_decomposition: " + std::to_string(r) + " weights but " +
                     std::to_string(alphas.size()) + " vectors");
  }
  if (r > m) throw ShapeError("from_rank_decomposition: rank exceeds the leading dimension");
  if (r == 0) throw ShapeError("from_rank_decomposition: empty decomposition");
  if (order < 2) throw ShapeError("from_rank_decomposition: order must be >= 2");
  const Index n = alphas[0].size();
  Vector<Scalar> sum = Vector<Scalar>::Zero(Shape(order, m, n).entry_count());
  std::vector<Vector<Scalar>> factors(order, alphas[0]);
  for (Index i = 0; i < r; ++i) {
    if (alphas[i].size() != n) throw ShapeError("from_rank_decomposition: vectors differ in length");
    factors[0] = Vector<Scalar>::Zero(m);
    factors[0][i] = lambdas[i];
    for (int j = 1; j < order; ++j) factors[j] = alphas[i];
    sum += outer_product(std::span<const Vector<Scalar>>(factors)).entries();
  }
  return BasicTensor<Scalar>(Shape(order, m, n), std::move(sum));
}

}  // namespace tginv
