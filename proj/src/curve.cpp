#include "wallach/curve.hpp"

#include "wallach/errors.hpp"
#include "wallach/matrix_functions.hpp"

namespace wallach {

ProductExpCurve::ProductExpCurve(DecompositionPtr dec, std::vector<Element> factors)
    : dec_(std::move(dec)), factors_(std::move(factors)) {
  if (factors_.empty()) throw SchemaError("a product-exponential curve needs a factor");
  for (const auto& f : factors_) require_same_context(f.context(), dec_->context(), "curve factor");
}

GroupElement ProductExpCurve::lift(double t) const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(context()->ambient_size(),
                                                context()->ambient_size());
  for (const auto& f : factors_) a = a * matrix_exp(f, t).matrix();
  return {context(), std::move(a)};
}

Element ProductExpCurve::initial_velocity() const {
  Element sum = Element::zero(context());
  for (const auto& f : factors_) sum += f;
  return project(sum, *dec_, Part::m);
}

ProductExpCurve ProductExpCurve::scaled(double s) const {
  std::vector<Element> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(s * f);
  return {dec_, std::move(out)};
}

std::vector<Element> ProductExpCurve::padded(std::size_t n) const {
  std::vector<Element> out = factors_;
  while (out.size() < n) out.push_back(Element::zero(context()));
  return out;
}

CurveState evaluate_curve(const ProductExpCurve& curve, double t) {
  const auto& ctx = *curve.context();
  const int n = ctx.ambient_size();
  CurveState s;
  s.t = t;
  s.lift = Eigen::MatrixXd::Identity(n, n);
  s.w = Eigen::VectorXd::Zero(ctx.dim());
  s.w_dot = Eigen::VectorXd::Zero(ctx.dim());
  for (const auto& f : curve.factors()) {
    const Eigen::MatrixXd fm = f.matrix();
    Eigen::MatrixXd e = linalg::expm(t * fm);
    Eigen::MatrixXd e_inv = linalg::expm(-t * fm);
    s.lift = s.lift * e;

    const Eigen::VectorXd carried = conjugate(ctx, e_inv, e, s.w);
    s.w_dot = conjugate(ctx, e_inv, e, s.w_dot) + ctx.bracket(carried, f.coeffs());
    s.w = carried + f.coeffs();

    s.exps.push_back(std::move(e));
    s.inverse_exps.push_back(std::move(e_inv));
  }
  return s;
}

}  // namespace wallach
