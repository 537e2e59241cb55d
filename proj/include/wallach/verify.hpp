#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wallach/curve.hpp"
#include "wallach/metrics.hpp"

namespace wallach {

struct Tolerances {
  double gw = 1e-9;
  double defect = 1e-9;
  double coset = 1e-6;
  double structural = 1e-12;
};

struct Grid {
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 20;  // intervals; steps + 1 points

  /// Throws PreconditionError unless t0 < t1 and steps >= 1.
  std::vector<double> points() const;
};

/// Per-grid-point maxima.
struct GridRow {
  double t = 0.0;
  double defect_norm = 0.0;
  double max_abs_gw = 0.0;
  double coset_dist = 0.0;
};

struct CurveCheck {
  std::vector<GridRow> rows;
  double max_abs_gw = 0.0;
  double max_defect_norm = 0.0;
  double max_coset_dist = 0.0;
};

/// Samples G_W for every m-basis W, the metric norm of the connection
/// defect and, when `shoot` is set, the coset distance to the RK4 geodesic
/// with the same initial velocity (shot backwards for negative t).
CurveCheck check_curve(const ProductExpCurve& curve, const DiagonalMetric& g, const Grid& grid,
                       bool shoot, double max_step = 1e-3);

/// Elementwise maximum of two checks on the same grid.
void merge_into(CurveCheck& total, const CurveCheck& next);

struct GeodesicReport {
  std::string space;
  std::array<double, 3> metric{};
  int metric_case = 0;
  int trials = 0;
  Grid grid;
  double max_abs_gw = 0.0;
  double max_defect_norm = 0.0;
  double max_coset_dist = 0.0;
  bool verdict = false;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
  std::vector<GridRow> rows;

  /// Sets the maxima from `check` and the verdict from the tolerances.
  void absorb(const CurveCheck& check);
};

}  // namespace wallach
