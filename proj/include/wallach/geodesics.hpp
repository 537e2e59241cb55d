#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wallach/catalog.hpp"
#include "wallach/curve.hpp"
#include "wallach/metrics.hpp"

namespace wallach {

/// T(t) = Ad(exp(-tZ) exp(-tY)) as a dim x dim matrix on coordinates.
Eigen::MatrixXd twist(const Element& y, const Element& z, double t);

/// G_W(t) for a curve of at most three factors (shorter products are padded
/// with zeros):
///   <(TX)_m + (TY)_m + Z_m, [W, TX+TY+Z]_m> + <W, [TX, TY+Z]_m + [TY, Z]_m>.
/// A W with a k-component is projected to m first and a note is appended to
/// `notes` when given.
double gw_defect(const ProductExpCurve& curve, const DiagonalMetric& g, const Element& w,
                 double t, std::vector<std::string>* notes = nullptr);

/// G_W(t) for every element W of the m-basis, in the order of
/// indices(Part::m). Reuses the factor exponentials of `state`.
Eigen::VectorXd gw_defect_all(const ProductExpCurve& curve, const DiagonalMetric& g,
                              const CurveState& state);
Eigen::VectorXd gw_defect_all(const ProductExpCurve& curve, const DiagonalMetric& g, double t);

struct CurveWithMetric {
  ProductExpCurve curve;
  DiagonalMetric metric;
};

/// Two-exponential geodesics through o with initial velocity X1+X2+X3:
///   case 1: metric (1,1,c), exp t(X1+X2+cX3) exp t(1-c)X3
///   case 2: metric (1,c,1), exp t(X1+cX2+X3) exp t(1-c)X2
///   case 3: metric (c,1,1), exp t(cX1+X2+X3) exp t(1-c)X1
/// Throws WrongModule when X_i has components outside m_i and InvalidMetric
/// for c <= 0.
CurveWithMetric closed_form_geodesic(const DecompositionPtr& dec, int metric_case,
                                     const Element& x1, const Element& x2, const Element& x3,
                                     double c);

/// Geodesic exp t(X1 + cX2) exp t(1-c)X2 . o of a two-summand space with
/// metric (1, c), X1 in M1 and X2 in M2. The metric is returned on the three
/// modules with lambda = c on the grouped module.
CurveWithMetric dohira_geodesic(const TwoSummandView& view, double c, const Element& x1,
                                const Element& x2);

/// exp(tX) . o; certified geodesic for every diagonal metric when some pair
/// of modules commutes. Throws HypothesisViolated otherwise.
ProductExpCurve homogeneous_geodesic(const DecompositionPtr& dec, const DiagonalMetric& g,
                                     const Element& x);

/// Case (1, 2 or 3) and parameter c matching a metric after lambda1
/// normalization, with relative tolerance `tol`; case 1 wins ties. Returns
/// case 0 when no pattern fits.
struct MetricCase {
  int metric_case = 0;
  double c = 0.0;
};
MetricCase infer_metric_case(const std::array<double, 3>& lambdas, double tol = 1e-12);
/// True when the metric matches the pattern of the given case; fills c.
bool metric_matches_case(const std::array<double, 3>& lambdas, int metric_case, double& c,
                         double tol = 1e-12);

// --- The restriction system for three-factor geodesics -------------------

/// Z = sum a_i X_i, Y = sum b_i X_i, X = sum c_i X_i.
struct RestrictionCoefficients {
  std::array<double, 3> a{};
  std::array<double, 3> b{};
};

/// Nine signed residuals LHS - RHS of the polynomial system equivalent to
/// G_W(0) = 0 (first three) and G_W'(0) = 0 (last six) for all W.
/// Throws InvalidMetric for non-positive lambdas.
std::array<double, 9> restriction_residual(const RestrictionCoefficients& coeffs,
                                           double lambda2, double lambda3);
/// d residual / d(a1, a2, a3, b1, b2, b3).
Eigen::Matrix<double, 9, 6> restriction_jacobian(const RestrictionCoefficients& coeffs,
                                                 double lambda2, double lambda3);

struct RestrictionSolution {
  std::string family;  // "s1" .. "s6"
  std::array<double, 3> a{};
  std::array<double, 3> b{};
  std::array<double, 3> c{};
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  /// Names of the free parameters, e.g. {"lambda3", "a3"}.
  std::vector<std::string> free_parameters;

  RestrictionCoefficients coefficients() const { return {a, b}; }
  /// fl(fl(a_i + b_i) + c_i) == 1 for every i.
  bool sums_exact() const;
};

/// All six solution families at the given free values. lambda_free is the
/// metric parameter of the family (lambda3 for s1, s2; lambda2 for s3, s4;
/// lambda2 = lambda3 for s5, s6); extra_free is the remaining coefficient
/// (a3, b2, a2, b2, b1, a1 respectively).
std::vector<RestrictionSolution> solution_families(double lambda_free, double extra_free);

/// Families whose metric constraint is met by (lambda2, lambda3) up to `tol`.
std::vector<RestrictionSolution> admissible_families(double lambda2, double lambda3,
                                                     double extra_free, double tol = 1e-12);

struct ProbeResult {
  double best_residual = 0.0;  // Euclidean norm of the nine residuals
  RestrictionCoefficients best;
  int starts = 0;
};

/// Best-effort search for solutions of the restriction system at a generic
/// metric: projected Levenberg-Marquardt from `multistarts` seeded random
/// points in [-5, 5]^6. A floor away from zero is evidence, not proof.
/// Throws PreconditionError unless 1, lambda2, lambda3 are pairwise at least
/// 0.05 apart.
ProbeResult nonexistence_probe(double lambda2, double lambda3, int multistarts,
                               std::uint64_t seed = 0);

}  // namespace wallach
