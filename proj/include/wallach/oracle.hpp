#pragma once

#include <cstdint>
#include <vector>

#include "wallach/curve.hpp"
#include "wallach/metrics.hpp"
#include "wallach/report.hpp"

namespace wallach {

struct CurveSample {
  double t = 0.0;
  GroupElement group_point;
  Element w;    // body velocity a^{-1} a'
  Element v;    // w_m
  Element w_k;  // w_k
};

CurveSample sample_curve(const ProductExpCurve& curve, double t);

/// D(t) = v' + [w_k, v] + U(v, v) in body coordinates; zero along a curve
/// exactly when its projection to G/K is a geodesic. v' is analytic.
Element connection_defect(const ProductExpCurve& curve, const DiagonalMetric& g, double t);
Eigen::VectorXd connection_defect(const ProductExpCurve& curve, const DiagonalMetric& g,
                                  const CurveState& state);

struct ShotGeodesic {
  std::vector<CurveSample> samples;  // t = 0, h, 2h, ..., t_end
  double step = 0.0;
  /// max |<v,v> - <v0,v0>| / max(1, <v0,v0>) over the samples.
  double energy_drift = 0.0;
  /// Largest ||a^T a - I||_F after re-projection; zero for non-orthogonal types.
  double orthogonality_drift = 0.0;
};

/// Classic RK4 for a' = a v, v' = -U(v, v) from a(0) = I, v(0) = v0, with
/// the group point re-projected to the orthogonal group after every step.
/// Throws PreconditionError for steps < 10, t_end <= 0 or v0 outside m, and
/// IntegrationFailure when the energy drifts by more than 1e-6.
ShotGeodesic shoot_geodesic(const DecompositionPtr& dec, const DiagonalMetric& g,
                            const Element& v0, double t_end, int steps);

/// Lifts of the shot geodesic at the given non-negative, non-decreasing
/// times, integrating between consecutive times with steps of at most
/// `max_step`.
std::vector<GroupElement> shoot_lifts(const DecompositionPtr& dec, const DiagonalMetric& g,
                                      const Element& v0, const std::vector<double>& times,
                                      double max_step = 1e-3);

/// -B norm of the m-part of log(a^{-1} b). Throws OutOfChart when
/// ||a^{-1} b - I||_2 >= 1.9.
double coset_distance(const GroupElement& a, const GroupElement& b,
                      const ReductiveDecomposition& dec);

/// Finite-difference checks (h = 1e-4, central) of the twist relations and
/// of the projection/derivative commutation on seeded random X, Y, Z in m.
StructureReport identity_checks(const DecompositionPtr& dec, std::uint64_t seed);

/// Same checks at given X, Y, Z.
StructureReport identity_checks(const DecompositionPtr& dec, const Element& x, const Element& y,
                                const Element& z);

}  // namespace wallach
