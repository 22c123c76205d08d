#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "tginv/tensor.hpp"

namespace tginv {

/// The homogeneous polynomial map x -> A . x^(t-1) of a tensor, or a composition of such
/// maps. Composition realizes the general product without materializing it:
/// (AB) . x^((t-1)(k-1)) = A . (B . x^(k-1))^(t-1).
class HomogeneousMap {
 public:
  using Function = std::function<VectorXc(const VectorXc&)>;

  explicit HomogeneousMap(const Tensor& a)
      : input_dim_(a.trailing_dim()), output_dim_(a.leading_dim()), degree_(a.order() - 1) {
    if (a.order() < 2) throw ShapeError("a homogeneous map needs a tensor of order >= 2");
    auto held = std::make_shared<const Tensor>(a);
    fn_ = [held](const VectorXc& x) { return tginv::apply(*held, x); };
  }

  HomogeneousMap(Index input_dim, Index output_dim, std::int64_t degree, Function fn)
      : input_dim_(input_dim), output_dim_(output_dim), degree_(degree), fn_(std::move(fn)) {}

  Index input_dim() const { return input_dim_; }
  Index output_dim() const { return output_dim_; }
  /// Homogeneity degree; a tensor of order t gives degree t-1.
  std::int64_t degree() const { return degree_; }
  bool is_square() const { return input_dim_ == output_dim_; }

  VectorXc operator()(const VectorXc& x) const {
    if (x.size() != input_dim_) {
      throw ShapeError("homogeneous map expects length " + std::to_string(input_dim_) + ", got " +
                       std::to_string(x.size()));
    }
    return fn_(x);
  }

  /// outer o inner, the map of the general product outer * inner.
  friend HomogeneousMap compose(const HomogeneousMap& outer, const HomogeneousMap& inner) {
    if (outer.input_dim_ != inner.output_dim_) {
      throw ShapeError("compose: inner map produces length " + std::to_string(inner.output_dim_) +
                       ", outer expects " + std::to_string(outer.input_dim_));
    }
    return HomogeneousMap(inner.input_dim_, outer.output_dim_, outer.degree_ * inner.degree_,
                          [f = outer.fn_, g = inner.fn_](const VectorXc& x) { return f(g(x)); });
  }

 private:
  Index input_dim_;
  Index output_dim_;
  std::int64_t degree_;
  Function fn_;
};

}  // namespace tginv
