#pragma once

#include <array>
#include <utility>

#include "wallach/curve.hpp"
#include "wallach/decomposition.hpp"

namespace wallach {

/// The invariant metric lambda1 (-B)|m1 + lambda2 (-B)|m2 + lambda3 (-B)|m3.
class DiagonalMetric {
 public:
  /// Throws InvalidMetric unless every lambda is finite and positive.
  DiagonalMetric(DecompositionPtr dec, std::array<double, 3> lambdas);

  const DecompositionPtr& decomposition() const { return dec_; }
  /// The lambdas as given; the Gram matrix is built from these.
  const std::array<double, 3>& lambdas() const { return lambdas_; }
  /// (1, lambda2/lambda1, lambda3/lambda1). Geodesics depend only on this.
  std::array<double, 3> normalized() const;

  /// dim x dim matrix of the inner product on coordinate vectors; zero on k.
  const Eigen::MatrixXd& full() const { return full_; }
  /// Positive-definite Gram matrix on the m-basis (ordering of indices(Part::m)).
  const Eigen::MatrixXd& gram() const { return gram_; }

  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double norm(const Eigen::VectorXd& x) const;
  /// U(X, Y) in m with 2<U(X,Y),Z> = <[Z,X]_m, Y> + <X, [Z,Y]_m> for Z in m.
  Eigen::VectorXd u_map(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

 private:
  DecompositionPtr dec_;
  std::array<double, 3> lambdas_;
  Eigen::MatrixXd full_;
  Eigen::MatrixXd gram_;
  Eigen::LLT<Eigen::MatrixXd> gram_llt_;
};

double inner(const DiagonalMetric& g, const Element& x, const Element& y);
Element u_map(const DiagonalMetric& g, const Element& x, const Element& y);

/// w(t) = a(t)^{-1} a'(t) and v(t) = w(t)_m, the pullback of the projected
/// curve's velocity to m.
std::pair<Element, Element> pullback_velocity(const ProductExpCurve& curve, double t);

}  // namespace wallach
