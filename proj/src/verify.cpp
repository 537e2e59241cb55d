#include "wallach/verify.hpp"

#include <algorithm>
#include <cmath>

#include "wallach/errors.hpp"
#include "wallach/geodesics.hpp"
#include "wallach/oracle.hpp"

namespace wallach {

std::vector<double> Grid::points() const {
  if (!(t0 < t1) || !std::isfinite(t0) || !std::isfinite(t1)) {
    throw PreconditionError("grid needs t0 < t1");
  }
  if (steps < 1) throw PreconditionError("grid needs at least one interval");
  std::vector<double> out(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    out[i] = i == steps ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / steps;
  }
  return out;
}

CurveCheck check_curve(const ProductExpCurve& curve, const DiagonalMetric& g, const Grid& grid,
                       bool shoot, double max_step) {
  const auto& dec = curve.decomposition();
  const std::vector<double> ts = grid.points();
  CurveCheck out;
  out.rows.resize(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const CurveState s = evaluate_curve(curve, ts[i]);
    GridRow& row = out.rows[i];
    row.t = ts[i];
    row.max_abs_gw = gw_defect_all(curve, g, s).cwiseAbs().maxCoeff();
    row.defect_norm = g.norm(connection_defect(curve, g, s));
  }
  if (shoot) {
    const Element v0 = curve.initial_velocity();
    std::vector<double> forward;
    std::vector<double> backward;
    for (double t : ts) (t >= 0.0 ? forward : backward).push_back(std::abs(t));
    std::reverse(backward.begin(), backward.end());
    const auto lifts_fwd = shoot_lifts(dec, g, v0, forward, max_step);
    const auto lifts_bwd = shoot_lifts(dec, g, -v0, backward, max_step);
    // backward holds |t| ascending for the negative grid points, which come
    // first in ts in descending |t| order.
    const std::size_t nb = backward.size();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const GroupElement& shot = i < nb ? lifts_bwd[nb - 1 - i] : lifts_fwd[i - nb];
      out.rows[i].coset_dist = coset_distance(curve.lift(ts[i]), shot, *dec);
    }
  }
  for (const auto& row : out.rows) {
    out.max_abs_gw = std::max(out.max_abs_gw, row.max_abs_gw);
    out.max_defect_norm = std::max(out.max_defect_norm, row.defect_norm);
    out.max_coset_dist = std::max(out.max_coset_dist, row.coset_dist);
  }
  return out;
}

void merge_into(CurveCheck& total, const CurveCheck& next) {
  if (total.rows.empty()) {
    total = next;
    return;
  }
  if (total.rows.size() != next.rows.size()) throw PreconditionError("grids differ");
  for (std::size_t i = 0; i < total.rows.size(); ++i) {
    auto& a = total.rows[i];
    const auto& b = next.rows[i];
    a.defect_norm = std::max(a.defect_norm, b.defect_norm);
    a.max_abs_gw = std::max(a.max_abs_gw, b.max_abs_gw);
    a.coset_dist = std::max(a.coset_dist, b.coset_dist);
  }
  total.max_abs_gw = std::max(total.max_abs_gw, next.max_abs_gw);
  total.max_defect_norm = std::max(total.max_defect_norm, next.max_defect_norm);
  total.max_coset_dist = std::max(total.max_coset_dist, next.max_coset_dist);
}

void GeodesicReport::absorb(const CurveCheck& check) {
  rows = check.rows;
  max_abs_gw = check.max_abs_gw;
  max_defect_norm = check.max_defect_norm;
  max_coset_dist = check.max_coset_dist;
  verdict = max_abs_gw <= tolerances.gw && max_defect_norm <= tolerances.defect &&
            max_coset_dist <= tolerances.coset;
}

}  // namespace wallach
