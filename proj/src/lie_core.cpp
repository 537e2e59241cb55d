#include "wallach/lie_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wallach/errors.hpp"
#include "wallach/matrix_functions.hpp"

namespace wallach {

namespace {

Eigen::Map<const Eigen::VectorXd> vec(const Eigen::MatrixXd& m) {
  return {m.data(), m.size()};
}

}  // namespace

ContextPtr AlgebraContext::create(std::string name,
                                  std::vector<Eigen::MatrixXd> basis,
                                  double tol_structural) {
  if (basis.empty()) throw SchemaError("algebra '" + name + "' has an empty basis");
  const Eigen::Index n = basis.front().rows();
  for (const auto& b : basis) {
    if (b.rows() != n || b.cols() != n || n == 0) {
      throw SchemaError("algebra '" + name +
                        "': basis matrices must be square and of equal size");
    }
    if (!b.allFinite()) {
      throw SchemaError("algebra '" + name + "': non-finite basis entry");
    }
  }

  std::shared_ptr<AlgebraContext> ctx(new AlgebraContext());
  ctx->name_ = std::move(name);
  ctx->ambient_ = static_cast<int>(n);
  ctx->tol_ = tol_structural;
  ctx->basis_ = std::move(basis);
  const int d = ctx->dim();

  ctx->stack_.resize(n * n, d);
  ctx->orthogonal_ = true;
  for (int j = 0; j < d; ++j) {
    ctx->stack_.col(j) = vec(ctx->basis_[j]);
    if ((ctx->basis_[j] + ctx->basis_[j].transpose()).norm() > 0.0) {
      ctx->orthogonal_ = false;
    }
  }
  ctx->gram_ = ctx->stack_.transpose() * ctx->stack_;

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ctx->gram_);
  const double largest = eig.eigenvalues().maxCoeff();
  const double smallest = eig.eigenvalues().minCoeff();
  if (!(largest > 0.0) || smallest <= 1e-10 * largest) {
    throw SchemaError("algebra '" + ctx->name_ +
                      "': basis matrices are linearly dependent");
  }
  ctx->gram_ldlt_.compute(ctx->gram_);

  ctx->ad_basis_.assign(d, Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Eigen::MatrixXd comm = ctx->basis_[i] * ctx->basis_[j] -
                                   ctx->basis_[j] * ctx->basis_[i];
      double residual = 0.0;
      ctx->ad_basis_[i].col(j) = ctx->coordinates(comm, &residual);
      if (residual > tol_structural) {
        std::ostringstream msg;
        msg << "algebra '" << ctx->name_ << "': [e" << i << ", e" << j
            << "] leaves the span of the basis (residual " << residual << ")";
        throw NotInAlgebra(msg.str());
      }
    }
  }

  ctx->killing_.resize(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const double v = (ctx->ad_basis_[i] * ctx->ad_basis_[j]).trace();
      ctx->killing_(i, j) = v;
      ctx->killing_(j, i) = v;
    }
  }
  return ctx;
}

Eigen::MatrixXd AlgebraContext::ad(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    if (x[i] != 0.0) out.noalias() += x[i] * ad_basis_[i];
  }
  return out;
}

Eigen::VectorXd AlgebraContext::bracket(const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  for (int i = 0; i < dim(); ++i) {
    if (x[i] != 0.0) out.noalias() += x[i] * (ad_basis_[i] * y);
  }
  return out;
}

Eigen::MatrixXd AlgebraContext::to_matrix(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd flat = stack_ * x;
  return Eigen::Map<const Eigen::MatrixXd>(flat.data(), ambient_, ambient_);
}

Eigen::VectorXd AlgebraContext::coordinates(const Eigen::MatrixXd& m,
                                            double* residual) const {
  const auto flat = vec(m);
  Eigen::VectorXd c = gram_ldlt_.solve(stack_.transpose() * flat);
  if (residual != nullptr) {
    *residual = (flat - stack_ * c).norm() / std::max(1.0, flat.norm());
  }
  return c;
}

Eigen::VectorXd AlgebraContext::checked_coordinates(const Eigen::MatrixXd& m) const {
  double residual = 0.0;
  Eigen::VectorXd c = coordinates(m, &residual);
  if (residual > tol_) {
    std::ostringstream msg;
    msg << "matrix does not lie in algebra '" << name_ << "' (residual "
        << residual << ")";
    throw NotInAlgebra(msg.str());
  }
  return c;
}

double AlgebraContext::antisymmetry_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      worst = std::max(worst,
                       (ad_basis_[i].col(j) + ad_basis_[j].col(i)).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double AlgebraContext::jacobi_residual() const {
  double worst = 0.0;
  const int d = dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Eigen::VectorXd eij = ad_basis_[i].col(j);
      for (int k = 0; k < d; ++k) {
        // [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej]
        const Eigen::VectorXd sum = -(ad_basis_[k] * eij) -
                                    ad_basis_[i] * ad_basis_[j].col(k) -
                                    ad_basis_[j] * ad_basis_[k].col(i);
        worst = std::max(worst, sum.norm());
      }
    }
  }
  return worst;
}

double AlgebraContext::killing_invariance_residual() const {
  double worst = 0.0;
  for (const auto& a : ad_basis_) {
    worst = std::max(worst, (a.transpose() * killing_ + killing_ * a).cwiseAbs().maxCoeff());
  }
  return worst;
}

double AlgebraContext::killing_symmetry_residual() const {
  return (killing_ - killing_.transpose()).cwiseAbs().maxCoeff();
}

double AlgebraContext::commutator_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      const Eigen::MatrixXd comm = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      const Eigen::VectorXd direct = coordinates(comm);
      worst = std::max(worst, (direct - ad_basis_[i].col(j)).cwiseAbs().maxCoeff());
      worst = std::max(worst, (to_matrix(ad_basis_[i].col(j)) - comm).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

Element::Element(ContextPtr ctx, Eigen::VectorXd coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (!ctx_) throw ContextMismatch("element without an algebra context");
  if (coeffs_.size() != ctx_->dim()) {
    throw SchemaError("coefficient vector length does not match algebra dimension");
  }
}

Element Element::zero(const ContextPtr& ctx) {
  return {ctx, Eigen::VectorXd::Zero(ctx->dim())};
}

Element Element::basis(const ContextPtr& ctx, int i) {
  return {ctx, Eigen::VectorXd::Unit(ctx->dim(), i)};
}

Element Element::from_matrix(const ContextPtr& ctx, const Eigen::MatrixXd& m) {
  return {ctx, ctx->checked_coordinates(m)};
}

Element& Element::operator+=(const Element& other) {
  require_same_context(ctx_, other.ctx_, "addition");
  coeffs_ += other.coeffs_;
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_context(ctx_, other.ctx_, "subtraction");
  coeffs_ -= other.coeffs_;
  return *this;
}

Element& Element::operator*=(double s) {
  coeffs_ *= s;
  return *this;
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }
Element operator*(double s, Element a) { return a *= s; }
Element operator-(Element a) { return a *= -1.0; }

GroupElement::GroupElement(ContextPtr ctx, Eigen::MatrixXd matrix)
    : ctx_(std::move(ctx)), matrix_(std::move(matrix)) {
  if (!ctx_) throw ContextMismatch("group element without an algebra context");
  if (matrix_.rows() != ctx_->ambient_size() || matrix_.cols() != ctx_->ambient_size()) {
    throw SchemaError("group element has the wrong ambient size");
  }
}

GroupElement GroupElement::identity(const ContextPtr& ctx) {
  return {ctx, Eigen::MatrixXd::Identity(ctx->ambient_size(), ctx->ambient_size())};
}

GroupElement GroupElement::inverse() const {
  if (ctx_->orthogonal_type()) return {ctx_, matrix_.transpose()};
  return {ctx_, matrix_.partialPivLu().inverse()};
}

double GroupElement::orthogonality_drift() const {
  const Eigen::Index n = matrix_.rows();
  return (matrix_.transpose() * matrix_ - Eigen::MatrixXd::Identity(n, n)).norm();
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  require_same_context(a.context(), b.context(), "group product");
  return {a.context(), a.matrix() * b.matrix()};
}

void require_same_context(const ContextPtr& a, const ContextPtr& b, const char* what) {
  if (a.get() != b.get()) {
    throw ContextMismatch(std::string(what) + ": operands belong to distinct algebra contexts");
  }
}

Element bracket(const Element& x, const Element& y) {
  require_same_context(x.context(), y.context(), "bracket");
  return {x.context(), x.context()->bracket(x.coeffs(), y.coeffs())};
}

double killing_form(const Element& x, const Element& y) {
  require_same_context(x.context(), y.context(), "killing_form");
  return x.coeffs().dot(x.context()->killing() * y.coeffs());
}

GroupElement matrix_exp(const Element& x, double t) {
  if (t == 0.0 || x.coeffs().isZero(0.0)) return GroupElement::identity(x.context());
  return {x.context(), linalg::expm(t * x.matrix())};
}

Eigen::VectorXd conjugate(const AlgebraContext& ctx, const Eigen::MatrixXd& g,
                          const Eigen::MatrixXd& g_inv, const Eigen::VectorXd& x) {
  return ctx.checked_coordinates(g * ctx.to_matrix(x) * g_inv);
}

Element adjoint(const GroupElement& g, const Element& x) {
  require_same_context(g.context(), x.context(), "adjoint");
  return {x.context(), conjugate(*x.context(), g.matrix(), g.inverse().matrix(), x.coeffs())};
}

Eigen::MatrixXd adjoint_matrix(const GroupElement& g) {
  const auto& ctx = *g.context();
  const Eigen::MatrixXd g_inv = g.inverse().matrix();
  Eigen::MatrixXd out(ctx.dim(), ctx.dim());
  for (int j = 0; j < ctx.dim(); ++j) {
    out.col(j) = ctx.checked_coordinates(g.matrix() * ctx.basis()[j] * g_inv);
  }
  return out;
}

}  // namespace wallach
