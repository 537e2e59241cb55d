#pragma once

#include <vector>

#include "wallach/decomposition.hpp"

namespace wallach {

/// t -> exp(t X_1) exp(t X_2) ... exp(t X_r) . o
class ProductExpCurve {
 public:
  /// Throws SchemaError for an empty factor list and ContextMismatch when a
  /// factor does not live in the decomposition's algebra.
  ProductExpCurve(DecompositionPtr dec, std::vector<Element> factors);

  const DecompositionPtr& decomposition() const { return dec_; }
  const ContextPtr& context() const { return dec_->context(); }
  const std::vector<Element>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }

  /// The lift a(t) in G.
  GroupElement lift(double t) const;
  /// (sum of factors)_m, the pulled-back initial velocity.
  Element initial_velocity() const;
  /// Same curve with every factor multiplied by s.
  ProductExpCurve scaled(double s) const;
  /// Factor list padded with zero elements to length n (n >= size()).
  std::vector<Element> padded(std::size_t n) const;

 private:
  DecompositionPtr dec_;
  std::vector<Element> factors_;
};

/// Lift and left-trivialized velocity of a product-exponential curve at one
/// parameter value. Each factor exponential is computed once and reused for
/// the lift, the body velocity and its derivative.
struct CurveState {
  double t = 0.0;
  Eigen::MatrixXd lift;
  /// exp(t X_j) and exp(-t X_j) per factor.
  std::vector<Eigen::MatrixXd> exps;
  std::vector<Eigen::MatrixXd> inverse_exps;
  /// Body velocity a^{-1} a' and its t-derivative, in coordinates.
  Eigen::VectorXd w;
  Eigen::VectorXd w_dot;
};

/// Evaluates the lift and the body velocity analytically. With
/// b_0 = 0 and b_j = Ad(exp(-t X_j)) b_{j-1} + X_j the body velocity is b_r;
/// differentiating the recursion gives
/// b_j' = Ad(exp(-t X_j)) b_{j-1}' + [Ad(exp(-t X_j)) b_{j-1}, X_j].
/// Throws NotInAlgebra when a conjugate fails to re-expand.
CurveState evaluate_curve(const ProductExpCurve& curve, double t);

}  // namespace wallach
