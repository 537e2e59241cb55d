#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

namespace wallach {

inline constexpr double kDefaultStructuralTol = 1e-12;

class AlgebraContext;
using ContextPtr = std::shared_ptr<const AlgebraContext>;

/// A finite-dimensional real matrix Lie algebra with a fixed ordered basis.
///
/// Structure constants are obtained by re-expanding matrix commutators of the
/// basis, and the Killing matrix from traces of products of the adjoint
/// matrices. Both are computed once at construction; the object is immutable
/// afterwards and may be shared freely between threads.
class AlgebraContext {
 public:
  /// Throws SchemaError when the basis is empty, not square, of mixed size or
  /// linearly dependent, and NotInAlgebra when a commutator of two basis
  /// elements leaves their span.
  static ContextPtr create(std::string name, std::vector<Eigen::MatrixXd> basis,
                           double tol_structural = kDefaultStructuralTol);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int ambient_size() const { return ambient_; }
  double tol_structural() const { return tol_; }
  const std::vector<Eigen::MatrixXd>& basis() const { return basis_; }

  /// c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
  double structure_constant(int i, int j, int k) const {
    return ad_basis_[i](k, j);
  }
  /// Matrix of ad(e_i) acting on coordinate vectors.
  const Eigen::MatrixXd& ad_basis(int i) const { return ad_basis_[i]; }
  Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// B(e_i, e_j) = trace(ad e_i ad e_j).
  const Eigen::MatrixXd& killing() const { return killing_; }
  /// Frobenius (trace) Gram matrix of the basis, tr(e_i^T e_j).
  const Eigen::MatrixXd& trace_gram() const { return gram_; }

  Eigen::MatrixXd to_matrix(const Eigen::VectorXd& x) const;

  /// Least-squares coordinates of an ambient matrix. The relative
  /// re-expansion residual is written to `residual` when requested.
  Eigen::VectorXd coordinates(const Eigen::MatrixXd& m,
                              double* residual = nullptr) const;
  /// Like coordinates(), but throws NotInAlgebra when the residual exceeds
  /// the structural tolerance.
  Eigen::VectorXd checked_coordinates(const Eigen::MatrixXd& m) const;

  /// True when every basis matrix is skew-symmetric, so the group is a
  /// subgroup of an orthogonal group.
  bool orthogonal_type() const { return orthogonal_; }

  double antisymmetry_residual() const;
  double jacobi_residual() const;
  double killing_invariance_residual() const;
  double killing_symmetry_residual() const;
  /// Max over basis pairs of the mismatch between the structure-constant
  /// bracket and the re-expanded ambient commutator.
  double commutator_residual() const;

 private:
  AlgebraContext() = default;

  std::string name_;
  int ambient_ = 0;
  double tol_ = kDefaultStructuralTol;
  bool orthogonal_ = false;
  std::vector<Eigen::MatrixXd> basis_;
  Eigen::MatrixXd stack_;  // ambient^2 x dim, column j = vec(e_j)
  Eigen::MatrixXd gram_;
  Eigen::LDLT<Eigen::MatrixXd> gram_ldlt_;
  std::vector<Eigen::MatrixXd> ad_basis_;
  Eigen::MatrixXd killing_;
};

/// An element of the algebra in coordinates of the context basis.
class Element {
 public:
  Element(ContextPtr ctx, Eigen::VectorXd coeffs);

  static Element zero(const ContextPtr& ctx);
  static Element basis(const ContextPtr& ctx, int i);
  static Element from_matrix(const ContextPtr& ctx, const Eigen::MatrixXd& m);

  const ContextPtr& context() const { return ctx_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  Eigen::MatrixXd matrix() const { return ctx_->to_matrix(coeffs_); }

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(double s);

 private:
  ContextPtr ctx_;
  Eigen::VectorXd coeffs_;
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator*(double s, Element a);
Element operator-(Element a);

/// An invertible ambient matrix representing a point of the group.
class GroupElement {
 public:
  GroupElement(ContextPtr ctx, Eigen::MatrixXd matrix);

  static GroupElement identity(const ContextPtr& ctx);

  const ContextPtr& context() const { return ctx_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  GroupElement inverse() const;
  /// ||g^T g - I||_F; meaningful for orthogonal-type contexts.
  double orthogonality_drift() const;

 private:
  ContextPtr ctx_;
  Eigen::MatrixXd matrix_;
};

GroupElement operator*(const GroupElement& a, const GroupElement& b);

/// Throws ContextMismatch unless both contexts are the same object.
void require_same_context(const ContextPtr& a, const ContextPtr& b,
                          const char* what);

Element bracket(const Element& x, const Element& y);
double killing_form(const Element& x, const Element& y);
GroupElement matrix_exp(const Element& x, double t);
/// Ad(g)X = g X g^{-1}, re-expanded in the basis; throws NotInAlgebra when
/// the conjugate leaves the span.
Element adjoint(const GroupElement& g, const Element& x);
/// Matrix of Ad(g) on coordinate vectors.
Eigen::MatrixXd adjoint_matrix(const GroupElement& g);

/// Coordinate-level conjugation used by the hot paths: coordinates of
/// g M(x) g_inv. The caller supplies the inverse.
Eigen::VectorXd conjugate(const AlgebraContext& ctx, const Eigen::MatrixXd& g,
                          const Eigen::MatrixXd& g_inv, const Eigen::VectorXd& x);

}  // namespace wallach
