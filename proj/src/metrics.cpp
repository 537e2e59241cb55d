#include "wallach/metrics.hpp"

#include <cmath>

#include "wallach/errors.hpp"

namespace wallach {

DiagonalMetric::DiagonalMetric(DecompositionPtr dec, std::array<double, 3> lambdas)
    : dec_(std::move(dec)), lambdas_(lambdas) {
  for (double l : lambdas_) {
    if (!std::isfinite(l) || l <= 0.0) {
      throw InvalidMetric("metric parameters must be positive and finite");
    }
  }
  const auto& ctx = *dec_->context();
  const Eigen::MatrixXd neg_b = -ctx.killing();
  full_ = Eigen::MatrixXd::Zero(ctx.dim(), ctx.dim());
  for (int i = 1; i <= 3; ++i) {
    const auto& p = dec_->projector(module_part(i));
    full_ += lambdas_[i - 1] * p * neg_b * p;
  }
  const auto& m = dec_->indices(Part::m);
  const auto n = static_cast<Eigen::Index>(m.size());
  gram_.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) gram_(a, b) = full_(m[a], m[b]);
  }
  gram_llt_.compute(gram_);
  if (gram_llt_.info() != Eigen::Success) {
    throw InvalidMetric("-B is not positive definite on m for space '" + dec_->name() + "'");
  }
}

std::array<double, 3> DiagonalMetric::normalized() const {
  return {1.0, lambdas_[1] / lambdas_[0], lambdas_[2] / lambdas_[0]};
}

double DiagonalMetric::inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  return x.dot(full_ * y);
}

double DiagonalMetric::norm(const Eigen::VectorXd& x) const {
  return std::sqrt(std::max(0.0, inner(x, x)));
}

Eigen::VectorXd DiagonalMetric::u_map(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  const auto& ctx = *dec_->context();
  // <[Z,X]_m, Y> = -(ad(X) Z)^T F Y, and F vanishes on k so the projection is
  // implicit.
  const Eigen::VectorXd rhs_full =
      -0.5 * (ctx.ad(x).transpose() * (full_ * y) + ctx.ad(y).transpose() * (full_ * x));
  const auto& m = dec_->indices(Part::m);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(m.size()));
  for (std::size_t a = 0; a < m.size(); ++a) rhs[a] = rhs_full[m[a]];
  const Eigen::VectorXd u = gram_llt_.solve(rhs);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(ctx.dim());
  for (std::size_t a = 0; a < m.size(); ++a) out[m[a]] = u[a];
  return out;
}

double inner(const DiagonalMetric& g, const Element& x, const Element& y) {
  require_same_context(x.context(), g.decomposition()->context(), "inner");
  require_same_context(y.context(), g.decomposition()->context(), "inner");
  return g.inner(x.coeffs(), y.coeffs());
}

Element u_map(const DiagonalMetric& g, const Element& x, const Element& y) {
  require_same_context(x.context(), g.decomposition()->context(), "u_map");
  require_same_context(y.context(), g.decomposition()->context(), "u_map");
  const auto& dec = *g.decomposition();
  return {x.context(), g.u_map(dec.project(x.coeffs(), Part::m), dec.project(y.coeffs(), Part::m))};
}

std::pair<Element, Element> pullback_velocity(const ProductExpCurve& curve, double t) {
  const CurveState s = evaluate_curve(curve, t);
  Element w(curve.context(), s.w);
  Element v(curve.context(), curve.decomposition()->project(s.w, Part::m));
  return {std::move(w), std::move(v)};
}

}  // namespace wallach
