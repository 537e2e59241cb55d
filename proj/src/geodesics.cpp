#include "wallach/geodesics.hpp"

#include <algorithm>
#include <cmath>

#include "wallach/errors.hpp"
#include "wallach/random.hpp"

namespace wallach {

namespace {

void require_in_part(const ReductiveDecomposition& dec, const Element& x, Part p,
                     const std::string& label) {
  require_same_context(x.context(), dec.context(), "geodesic constructor");
  const Eigen::VectorXd outside = x.coeffs() - dec.project(x.coeffs(), p);
  if (outside.norm() > dec.context()->tol_structural() * std::max(1.0, x.coeffs().norm())) {
    throw WrongModule(label + " is not in " + std::string(part_name(p)));
  }
}

void require_in_indices(const ReductiveDecomposition& dec, const Element& x,
                        const std::vector<int>& idx, const std::string& label) {
  require_same_context(x.context(), dec.context(), "geodesic constructor");
  Eigen::VectorXd outside = x.coeffs();
  for (int i : idx) outside[i] = 0.0;
  if (outside.norm() > dec.context()->tol_structural() * std::max(1.0, x.coeffs().norm())) {
    throw WrongModule(label + " has components outside its summand");
  }
}

void require_positive(double c) {
  if (!std::isfinite(c) || c <= 0.0) throw InvalidMetric("metric parameter c must be positive");
}

void require_positive_lambdas(double l2, double l3) {
  if (!std::isfinite(l2) || !std::isfinite(l3) || l2 <= 0.0 || l3 <= 0.0) {
    throw InvalidMetric("lambda2 and lambda3 must be positive");
  }
}

// Twisted factors for the (padded) three-factor form, using the factor
// exponentials stored in the curve state.
struct Twisted {
  Eigen::VectorXd tx, ty, z;
};

Twisted twisted_factors(const ProductExpCurve& curve, const CurveState& s) {
  if (curve.size() > 3) {
    throw SchemaError("G_W is defined here for products of at most three exponentials");
  }
  const auto& ctx = *curve.context();
  const auto padded = curve.padded(3);
  Twisted out{padded[0].coeffs(), padded[1].coeffs(), padded[2].coeffs()};
  auto apply_inverse = [&](std::size_t factor, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    if (factor >= curve.size()) return v;
    return conjugate(ctx, s.inverse_exps[factor], s.exps[factor], v);
  };
  // TX = Ad(exp(-tZ)) Ad(exp(-tY)) X, TY = Ad(exp(-tZ)) Y.
  out.tx = apply_inverse(2, apply_inverse(1, out.tx));
  out.ty = apply_inverse(2, out.ty);
  return out;
}

// G_W over all coordinate directions W.
Eigen::VectorXd gw_full(const ProductExpCurve& curve, const DiagonalMetric& g,
                        const CurveState& s) {
  const auto& ctx = *curve.context();
  const Twisted tw = twisted_factors(curve, s);
  const Eigen::VectorXd sum = tw.tx + tw.ty + tw.z;
  const Eigen::VectorXd rest = ctx.bracket(tw.tx, tw.ty + tw.z) + ctx.bracket(tw.ty, tw.z);
  const Eigen::MatrixXd& f = g.full();
  // <S_m, [W,S]_m> = -(ad(S)^T F S) . W and <W, R_m> = (F R) . W
  return -(ctx.ad(sum).transpose() * (f * sum)) + f * rest;
}

}  // namespace

Eigen::MatrixXd twist(const Element& y, const Element& z, double t) {
  require_same_context(y.context(), z.context(), "twist");
  const GroupElement g = matrix_exp(z, -t) * matrix_exp(y, -t);
  return adjoint_matrix(g);
}

double gw_defect(const ProductExpCurve& curve, const DiagonalMetric& g, const Element& w,
                 double t, std::vector<std::string>* notes) {
  require_same_context(w.context(), curve.context(), "gw_defect");
  const auto& dec = *curve.decomposition();
  Eigen::VectorXd wm = dec.project(w.coeffs(), Part::m);
  if ((wm - w.coeffs()).norm() > 0.0 && notes != nullptr) {
    notes->push_back("gw_defect: W had a k-component; projected to m");
  }
  const CurveState s = evaluate_curve(curve, t);
  return gw_full(curve, g, s).dot(wm);
}

Eigen::VectorXd gw_defect_all(const ProductExpCurve& curve, const DiagonalMetric& g,
                              const CurveState& state) {
  const Eigen::VectorXd full = gw_full(curve, g, state);
  const auto& m = curve.decomposition()->indices(Part::m);
  Eigen::VectorXd out(static_cast<Eigen::Index>(m.size()));
  for (std::size_t a = 0; a < m.size(); ++a) out[a] = full[m[a]];
  return out;
}

Eigen::VectorXd gw_defect_all(const ProductExpCurve& curve, const DiagonalMetric& g, double t) {
  return gw_defect_all(curve, g, evaluate_curve(curve, t));
}

CurveWithMetric closed_form_geodesic(const DecompositionPtr& dec, int metric_case,
                                     const Element& x1, const Element& x2, const Element& x3,
                                     double c) {
  require_positive(c);
  require_in_part(*dec, x1, Part::m1, "X1");
  require_in_part(*dec, x2, Part::m2, "X2");
  require_in_part(*dec, x3, Part::m3, "X3");
  switch (metric_case) {
    case 1:
      return {ProductExpCurve(dec, {x1 + x2 + c * x3, (1.0 - c) * x3}),
              DiagonalMetric(dec, {1.0, 1.0, c})};
    case 2:
      return {ProductExpCurve(dec, {x1 + c * x2 + x3, (1.0 - c) * x2}),
              DiagonalMetric(dec, {1.0, c, 1.0})};
    case 3:
      return {ProductExpCurve(dec, {c * x1 + x2 + x3, (1.0 - c) * x1}),
              DiagonalMetric(dec, {c, 1.0, 1.0})};
    default:
      throw InvalidMetric("metric case must be 1, 2 or 3");
  }
}

CurveWithMetric dohira_geodesic(const TwoSummandView& view, double c, const Element& x1,
                                const Element& x2) {
  require_positive(c);
  const auto& dec = view.parent();
  require_in_indices(*dec, x1, view.m1_indices(), "X1");
  require_in_indices(*dec, x2, view.m2_indices(), "X2");
  std::array<double, 3> lambdas = {1.0, 1.0, 1.0};
  lambdas[view.grouped_module() - 1] = c;
  return {ProductExpCurve(dec, {x1 + c * x2, (1.0 - c) * x2}), DiagonalMetric(dec, lambdas)};
}

ProductExpCurve homogeneous_geodesic(const DecompositionPtr& dec, const DiagonalMetric& g,
                                     const Element& x) {
  require_same_context(g.decomposition()->context(), dec->context(), "homogeneous_geodesic");
  if (!dec->has_commuting_pair()) {
    throw HypothesisViolated("no pair of modules commutes in '" + dec->name() +
                             "'; exp(tX).o is not certified geodesic");
  }
  require_in_part(*dec, x, Part::m, "X");
  return {dec, {x}};
}

bool metric_matches_case(const std::array<double, 3>& lambdas, int metric_case, double& c,
                         double tol) {
  const double n2 = lambdas[1] / lambdas[0];
  const double n3 = lambdas[2] / lambdas[0];
  auto close = [tol](double a, double b) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  };
  switch (metric_case) {
    case 1:
      if (!close(n2, 1.0)) return false;
      c = n3;
      return true;
    case 2:
      if (!close(n3, 1.0)) return false;
      c = n2;
      return true;
    case 3:
      if (!close(n2, n3)) return false;
      c = 1.0 / n2;
      return true;
    default:
      return false;
  }
}

MetricCase infer_metric_case(const std::array<double, 3>& lambdas, double tol) {
  for (int k = 1; k <= 3; ++k) {
    double c = 0.0;
    if (metric_matches_case(lambdas, k, c, tol)) return {k, c};
  }
  return {};
}

std::array<double, 9> restriction_residual(const RestrictionCoefficients& p, double l2,
                                           double l3) {
  require_positive_lambdas(l2, l3);
  const auto [a1, a2, a3] = p.a;
  const auto [b1, b2, b3] = p.b;
  const double l23 = l2 * l3;
  return {
      a3 - a2 + b3 - b2 + b2 * a3 - b3 * a2 - (l2 - l3),
      a3 - a1 + b3 - b1 + b1 * a3 - b3 * a1 - (1.0 - l3) / l2,
      a2 - a1 + b2 - b1 + b1 * a2 - b2 * a1 - (1.0 - l2) / l3,
      (1 - l2) * b2 + 2 * (1 - l2) * a2 + l3 * b2 * a1 - l3 * b2 * a2 - l3 * a2 * a2 +
          l3 * a1 * a2 - (l3 - l2) * (1 - l2),
      (1 - l3) * b3 + 2 * (1 - l3) * a3 + l2 * b3 * a1 - l2 * b3 * a3 - l2 * a3 * a3 +
          l2 * a1 * a3 - (l2 - l3) * (1 - l3),
      l2 * (1 - l2) * b1 + 2 * l2 * (1 - l2) * a1 + l23 * b1 * a1 - l23 * b1 * a2 +
          l23 * a1 * a1 - l23 * a1 * a2 - (l2 - 1) * (1 - l3),
      l2 * (l2 - l3) * b3 + 2 * l2 * (l2 - l3) * a3 + l2 * b3 * a2 - l2 * b3 * a3 -
          l2 * a3 * a3 + l2 * a2 * a3 - (1 - l3) * (l2 - l3),
      l3 * (1 - l3) * b1 + 2 * l3 * (1 - l3) * a1 + l23 * b1 * a1 - l23 * b1 * a3 +
          l23 * a1 * a1 - l23 * a1 * a3 - (l2 - 1) * (1 - l3),
      l3 * (l2 - l3) * b2 + 2 * l3 * (l2 - l3) * a2 + l3 * b2 * a2 - l3 * b2 * a3 +
          l3 * a2 * a2 - l3 * a2 * a3 - (l2 - l3) * (1 - l2),
  };
}

Eigen::Matrix<double, 9, 6> restriction_jacobian(const RestrictionCoefficients& p, double l2,
                                                 double l3) {
  require_positive_lambdas(l2, l3);
  const auto [a1, a2, a3] = p.a;
  const auto [b1, b2, b3] = p.b;
  const double l23 = l2 * l3;
  Eigen::Matrix<double, 9, 6> j = Eigen::Matrix<double, 9, 6>::Zero();
  // columns: a1 a2 a3 b1 b2 b3
  j.row(0) << 0, -1 - b3, 1 + b2, 0, -1 + a3, 1 - a2;
  j.row(1) << -1 - b3, 0, 1 + b1, -1 + a3, 0, 1 - a1;
  j.row(2) << -1 - b2, 1 + b1, 0, -1 + a2, 1 - a1, 0;
  j.row(3) << l3 * (b2 + a2), 2 * (1 - l2) - l3 * b2 - 2 * l3 * a2 + l3 * a1, 0, 0,
      (1 - l2) + l3 * a1 - l3 * a2, 0;
  j.row(4) << l2 * (b3 + a3), 0, 2 * (1 - l3) - l2 * b3 - 2 * l2 * a3 + l2 * a1, 0, 0,
      (1 - l3) + l2 * a1 - l2 * a3;
  j.row(5) << 2 * l2 * (1 - l2) + l23 * b1 + 2 * l23 * a1 - l23 * a2, -l23 * (b1 + a1), 0,
      l2 * (1 - l2) + l23 * (a1 - a2), 0, 0;
  j.row(6) << 0, l2 * (b3 + a3), 2 * l2 * (l2 - l3) - l2 * b3 - 2 * l2 * a3 + l2 * a2, 0, 0,
      l2 * (l2 - l3) + l2 * (a2 - a3);
  j.row(7) << 2 * l3 * (1 - l3) + l23 * b1 + 2 * l23 * a1 - l23 * a3, 0, -l23 * (b1 + a1),
      l3 * (1 - l3) + l23 * (a1 - a3), 0, 0;
  j.row(8) << 0, 2 * l3 * (l2 - l3) + l3 * b2 + 2 * l3 * a2 - l3 * a3, -l3 * (b2 + a2), 0,
      l3 * (l2 - l3) + l3 * (a2 - a3), 0;
  return j;
}

bool RestrictionSolution::sums_exact() const {
  for (int i = 0; i < 3; ++i) {
    if ((a[i] + b[i]) + c[i] != 1.0) return false;
  }
  return true;
}

namespace {

RestrictionSolution make_solution(std::string family, std::array<double, 3> a,
                                  std::array<double, 3> b, double l2, double l3,
                                  std::vector<std::string> free) {
  RestrictionSolution s;
  s.family = std::move(family);
  s.a = a;
  s.b = b;
  s.lambda2 = l2;
  s.lambda3 = l3;
  s.free_parameters = std::move(free);
  for (int i = 0; i < 3; ++i) {
    double ab = s.a[i] + s.b[i];
    double c = 1.0 - ab;
    // Step c by ulps until the floating-point sum closes exactly.
    for (int step = 0; step < 8 && ab + c != 1.0; ++step) {
      c = std::nextafter(c, ab + c < 1.0 ? HUGE_VAL : -HUGE_VAL);
    }
    if (ab + c != 1.0) {
      // The ulp of c is too coarse; on a 2^-48 grid 1 - a - b is exact.
      s.a[i] = std::ldexp(std::nearbyint(std::ldexp(s.a[i], 48)), -48);
      s.b[i] = std::ldexp(std::nearbyint(std::ldexp(s.b[i], 48)), -48);
      ab = s.a[i] + s.b[i];
      c = 1.0 - ab;
    }
    s.c[i] = c;
  }
  return s;
}

}  // namespace

std::vector<RestrictionSolution> solution_families(double lambda_free, double e) {
  if (!std::isfinite(lambda_free) || lambda_free <= 0.0) {
    throw InvalidMetric("the free metric parameter must be positive");
  }
  const double l = lambda_free;
  std::vector<RestrictionSolution> out;
  out.push_back(make_solution("s1", {0, 0, e}, {0, 0, 1 - e - l}, 1.0, l, {"lambda3", "a3"}));
  out.push_back(make_solution("s2", {0, 0, 1 - l}, {e, e, l * e}, 1.0, l, {"lambda3", "b2"}));
  out.push_back(make_solution("s3", {0, e, 0}, {0, 1 - e - l, 0}, l, 1.0, {"lambda2", "a2"}));
  out.push_back(
      make_solution("s4", {0, 1 - l, 0}, {e / l, e, e / l}, l, 1.0, {"lambda2", "b2"}));
  out.push_back(
      make_solution("s5", {(l - 1) / l, 0, 0}, {e, l * e, l * e}, l, l, {"lambda2=lambda3", "b1"}));
  out.push_back(
      make_solution("s6", {e, 0, 0}, {(l - e * l - 1) / l, 0, 0}, l, l, {"lambda2=lambda3", "a1"}));
  return out;
}

std::vector<RestrictionSolution> admissible_families(double lambda2, double lambda3,
                                                     double extra_free, double tol) {
  require_positive_lambdas(lambda2, lambda3);
  auto close = [tol](double a, double b) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  };
  std::vector<RestrictionSolution> out;
  auto take = [&](double free, std::initializer_list<const char*> names) {
    for (auto& s : solution_families(free, extra_free)) {
      for (const char* n : names) {
        if (s.family == n) out.push_back(s);
      }
    }
  };
  if (close(lambda2, 1.0)) take(lambda3, {"s1", "s2"});
  if (close(lambda3, 1.0)) take(lambda2, {"s3", "s4"});
  if (close(lambda2, lambda3)) take(lambda2, {"s5", "s6"});
  return out;
}

ProbeResult nonexistence_probe(double l2, double l3, int multistarts, std::uint64_t seed) {
  require_positive_lambdas(l2, l3);
  constexpr double kSeparation = 0.05;
  if (std::abs(l2 - 1.0) < kSeparation || std::abs(l3 - 1.0) < kSeparation ||
      std::abs(l2 - l3) < kSeparation) {
    throw PreconditionError(
        "metric is not generic (1, lambda2, lambda3 must be pairwise 0.05 apart); "
        "use solution_families for lambda2 = 1, lambda3 = 1 or lambda2 = lambda3");
  }
  if (multistarts < 1) throw PreconditionError("multistarts must be positive");

  using Vec6 = Eigen::Matrix<double, 6, 1>;
  auto unpack = [](const Vec6& p) {
    return RestrictionCoefficients{{p[0], p[1], p[2]}, {p[3], p[4], p[5]}};
  };
  auto residual_norm = [&](const Vec6& p) {
    const auto r = restriction_residual(unpack(p), l2, l3);
    return Eigen::Map<const Eigen::Matrix<double, 9, 1>>(r.data()).norm();
  };

  SplitMix64 rng(seed, 0x70726f6265ULL);
  ProbeResult best;
  best.best_residual = HUGE_VAL;
  best.starts = multistarts;
  for (int start = 0; start < multistarts; ++start) {
    Vec6 p;
    for (int k = 0; k < 6; ++k) p[k] = rng.uniform(-5.0, 5.0);
    double current = residual_norm(p);
    double mu = 1e-3;
    for (int iter = 0; iter < 400 && mu < 1e12; ++iter) {
      const auto coeffs = unpack(p);
      const auto rv = restriction_residual(coeffs, l2, l3);
      const Eigen::Map<const Eigen::Matrix<double, 9, 1>> r(rv.data());
      const auto jac = restriction_jacobian(coeffs, l2, l3);
      const Vec6 grad = jac.transpose() * r;
      if (grad.norm() < 1e-15) break;
      Eigen::Matrix<double, 6, 6> h = jac.transpose() * jac;
      h.diagonal() += mu * (h.diagonal().array() + 1.0).matrix();
      const Vec6 step = h.ldlt().solve(-grad);
      const Vec6 trial = (p + step).cwiseMax(-5.0).cwiseMin(5.0);
      const double value = residual_norm(trial);
      if (value < current) {
        const double gain = current - value;
        p = trial;
        current = value;
        mu = std::max(mu / 3.0, 1e-12);
        if (gain < 1e-14 * std::max(1.0, current)) break;
      } else {
        mu *= 4.0;
      }
    }
    if (current < best.best_residual) {
      best.best_residual = current;
      best.best = unpack(p);
    }
  }
  return best;
}

}  // namespace wallach
