#include "wallach/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "wallach/errors.hpp"
#include "wallach/matrix_functions.hpp"
#include "wallach/random.hpp"

namespace wallach {

namespace {

constexpr double kFdStep = 1e-4;
constexpr double kFdTol = 1e-6;
constexpr double kExactTol = 1e-12;
constexpr double kEnergyFailure = 1e-6;

double rel(const Eigen::VectorXd& diff, const Eigen::VectorXd& scale) {
  return diff.norm() / std::max(1.0, scale.norm());
}

}  // namespace

CurveSample sample_curve(const ProductExpCurve& curve, double t) {
  const CurveState s = evaluate_curve(curve, t);
  const auto& dec = *curve.decomposition();
  const auto& ctx = curve.context();
  return {t, GroupElement(ctx, s.lift), Element(ctx, s.w), Element(ctx, dec.project(s.w, Part::m)),
          Element(ctx, dec.project(s.w, Part::k))};
}

Eigen::VectorXd connection_defect(const ProductExpCurve& curve, const DiagonalMetric& g,
                                  const CurveState& s) {
  require_same_context(curve.context(), g.decomposition()->context(), "connection_defect");
  const auto& dec = *curve.decomposition();
  const auto& ctx = *curve.context();
  const Eigen::VectorXd v = dec.project(s.w, Part::m);
  const Eigen::VectorXd wk = dec.project(s.w, Part::k);
  const Eigen::VectorXd v_dot = dec.project(s.w_dot, Part::m);
  const Eigen::VectorXd d = v_dot + ctx.bracket(wk, v) + g.u_map(v, v);
  return dec.project(d, Part::m);
}

Element connection_defect(const ProductExpCurve& curve, const DiagonalMetric& g, double t) {
  return {curve.context(), connection_defect(curve, g, evaluate_curve(curve, t))};
}

namespace {

struct Stepper {
  const ReductiveDecomposition& dec;
  const DiagonalMetric& g;
  const AlgebraContext& ctx;
  bool orthogonal;

  Eigen::VectorXd accel(const Eigen::VectorXd& v) const { return -g.u_map(v, v); }

  // One RK4 step of a' = a M(v), v' = -U(v, v).
  void step(Eigen::MatrixXd& a, Eigen::VectorXd& v, double h) const {
    const Eigen::MatrixXd m1 = ctx.to_matrix(v);
    const Eigen::VectorXd l1 = accel(v);
    const Eigen::MatrixXd k1 = a * m1;

    const Eigen::VectorXd v2 = v + 0.5 * h * l1;
    const Eigen::MatrixXd k2 = (a + 0.5 * h * k1) * ctx.to_matrix(v2);
    const Eigen::VectorXd l2 = accel(v2);

    const Eigen::VectorXd v3 = v + 0.5 * h * l2;
    const Eigen::MatrixXd k3 = (a + 0.5 * h * k2) * ctx.to_matrix(v3);
    const Eigen::VectorXd l3 = accel(v3);

    const Eigen::VectorXd v4 = v + h * l3;
    const Eigen::MatrixXd k4 = (a + h * k3) * ctx.to_matrix(v4);
    const Eigen::VectorXd l4 = accel(v4);

    a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    v += (h / 6.0) * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
    if (orthogonal) a = linalg::polar_orthonormalize(a);
  }
};

Eigen::VectorXd checked_v0(const ReductiveDecomposition& dec, const Element& v0) {
  require_same_context(v0.context(), dec.context(), "shoot_geodesic");
  const Eigen::VectorXd vm = dec.project(v0.coeffs(), Part::m);
  if ((vm - v0.coeffs()).norm() > dec.context()->tol_structural() * std::max(1.0, vm.norm())) {
    throw PreconditionError("initial velocity must lie in m");
  }
  return vm;
}

double energy_change(const DiagonalMetric& g, const Eigen::VectorXd& v, double e0) {
  return std::abs(g.inner(v, v) - e0) / std::max(1.0, e0);
}

[[noreturn]] void energy_failure(double drift) {
  throw IntegrationFailure("RK4 energy drift " + std::to_string(drift) +
                           " exceeds 1e-6; use more steps");
}

}  // namespace

ShotGeodesic shoot_geodesic(const DecompositionPtr& dec, const DiagonalMetric& g,
                            const Element& v0, double t_end, int steps) {
  if (steps < 10) throw PreconditionError("shooting needs at least 10 steps");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw PreconditionError("shooting interval must have positive length");
  }
  require_same_context(dec->context(), g.decomposition()->context(), "shoot_geodesic");
  Eigen::VectorXd v = checked_v0(*dec, v0);
  const auto& ctx = *dec->context();
  const Stepper stepper{*dec, g, ctx, ctx.orthogonal_type()};
  const double e0 = g.inner(v, v);
  const double h = t_end / steps;

  ShotGeodesic shot;
  shot.step = h;
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(ctx.ambient_size(), ctx.ambient_size());
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(ctx.dim());
  auto record = [&](double t) {
    GroupElement point(dec->context(), a);
    if (stepper.orthogonal) {
      shot.orthogonality_drift = std::max(shot.orthogonality_drift, point.orthogonality_drift());
    }
    shot.samples.push_back({t, std::move(point), Element(dec->context(), v),
                            Element(dec->context(), v), Element(dec->context(), zero)});
  };
  record(0.0);
  for (int i = 1; i <= steps; ++i) {
    stepper.step(a, v, h);
    shot.energy_drift = std::max(shot.energy_drift, energy_change(g, v, e0));
    if (shot.energy_drift > kEnergyFailure) energy_failure(shot.energy_drift);
    record(i == steps ? t_end : i * h);
  }
  return shot;
}

std::vector<GroupElement> shoot_lifts(const DecompositionPtr& dec, const DiagonalMetric& g,
                                      const Element& v0, const std::vector<double>& times,
                                      double max_step) {
  if (!(max_step > 0.0)) throw PreconditionError("max_step must be positive");
  require_same_context(dec->context(), g.decomposition()->context(), "shoot_lifts");
  Eigen::VectorXd v = checked_v0(*dec, v0);
  const auto& ctx = *dec->context();
  const Stepper stepper{*dec, g, ctx, ctx.orthogonal_type()};
  const double e0 = g.inner(v, v);

  std::vector<GroupElement> out;
  out.reserve(times.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(ctx.ambient_size(), ctx.ambient_size());
  double now = 0.0;
  for (double t : times) {
    if (t < now || !std::isfinite(t)) {
      throw PreconditionError("shooting times must be non-negative and non-decreasing");
    }
    const double span = t - now;
    if (span > 0.0) {
      const int n = static_cast<int>(std::ceil(span / max_step - 1e-9));
      const double h = span / n;
      for (int i = 0; i < n; ++i) stepper.step(a, v, h);
      const double drift = energy_change(g, v, e0);
      if (drift > kEnergyFailure) energy_failure(drift);
      now = t;
    }
    out.emplace_back(dec->context(), a);
  }
  return out;
}

double coset_distance(const GroupElement& a, const GroupElement& b,
                      const ReductiveDecomposition& dec) {
  require_same_context(a.context(), dec.context(), "coset_distance");
  require_same_context(b.context(), dec.context(), "coset_distance");
  const Eigen::MatrixXd rel_pos = a.inverse().matrix() * b.matrix();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(rel_pos.rows(), rel_pos.cols());
  const double radius = linalg::spectral_norm(rel_pos - id);
  if (!(radius < 1.9)) {
    throw OutOfChart("points are outside the logarithm chart (||a^-1 b - I|| = " +
                     std::to_string(radius) + "); subdivide the interval");
  }
  const auto& ctx = *dec.context();
  const Eigen::VectorXd x = dec.project(ctx.coordinates(linalg::logm(rel_pos)), Part::m);
  return std::sqrt(std::max(0.0, -x.dot(ctx.killing() * x)));
}

StructureReport identity_checks(const DecompositionPtr& dec, const Element& x, const Element& y,
                                const Element& z) {
  const auto& ctxp = dec->context();
  const auto& ctx = *ctxp;
  require_same_context(x.context(), ctxp, "identity_checks");
  require_same_context(y.context(), ctxp, "identity_checks");
  require_same_context(z.context(), ctxp, "identity_checks");
  const double h = kFdStep;
  auto ad_exp = [&](const Element& e, double t, const Eigen::VectorXd& u) -> Eigen::VectorXd {
    const Eigen::MatrixXd m = linalg::expm(t * e.matrix());
    const Eigen::MatrixXd m_inv = linalg::expm(-t * e.matrix());
    return conjugate(ctx, m, m_inv, u);
  };
  // T(t)u = Ad(exp(-tZ) exp(-tY)) u
  auto twist_apply = [&](double t, const Eigen::VectorXd& u) {
    return ad_exp(z, -t, ad_exp(y, -t, u));
  };
  // Ad(alpha(t)^{-1}) u with alpha(t) = exp(tX) exp(tY) exp(tZ)
  auto ad_alpha_inv = [&](double t, const Eigen::VectorXd& u) {
    return ad_exp(z, -t, ad_exp(y, -t, ad_exp(x, -t, u)));
  };
  const Eigen::VectorXd& xc = x.coeffs();
  const Eigen::VectorXd& yc = y.coeffs();
  const Eigen::VectorXd& zc = z.coeffs();
  const double t = 0.7;

  StructureReport r;
  r.space = dec->name();

  {
    const Eigen::VectorXd fd = (twist_apply(h, xc) - twist_apply(-h, xc)) / (2 * h);
    const Eigen::VectorXd exact = ctx.bracket(xc, yc + zc);
    r.add("d/dt T(t)X at 0 = [X, Y+Z]", rel(fd - exact, exact), kFdTol);
  }
  {
    double worst = 0.0;
    for (double s : {-1.3, 0.4, 0.7, 2.5}) worst = std::max(worst, rel(ad_exp(x, s, xc) - xc, xc));
    r.add("Ad(exp(tX))X = X", worst, kExactTol);
  }
  {
    const Eigen::VectorXd fd = (ad_exp(z, -(t + h), yc) - ad_exp(z, -(t - h), yc)) / (2 * h);
    const Eigen::VectorXd exact = ctx.bracket(twist_apply(t, yc), zc);
    r.add("d/ds Ad(exp(-(t+s)Z))Y = [TY, Z]", rel(fd - exact, exact), kFdTol);
  }
  Eigen::VectorXd fd_alpha;
  Eigen::VectorXd exact_alpha;
  {
    fd_alpha = (ad_alpha_inv(t + h, xc) - ad_alpha_inv(t - h, xc)) / (2 * h);
    const Eigen::VectorXd tx = twist_apply(t, xc);
    exact_alpha = ctx.bracket(tx, zc) + ctx.bracket(tx, twist_apply(t, yc));
    r.add("d/ds Ad(alpha(t+s)^-1)X = [TX, Z] + [TX, TY]", rel(fd_alpha - exact_alpha, exact_alpha),
          kFdTol);
  }
  {
    // Projection commutes with the derivative: FD of the projected curve
    // against the projected analytic derivative.
    const Eigen::VectorXd fd =
        (dec->project(ad_alpha_inv(t + h, xc), Part::m) -
         dec->project(ad_alpha_inv(t - h, xc), Part::m)) / (2 * h);
    const Eigen::VectorXd exact = dec->project(exact_alpha, Part::m);
    r.add("d/dt (Ad(alpha^-1)X)_m = (d/dt Ad(alpha^-1)X)_m", rel(fd - exact, exact), kFdTol);
  }
  {
    // Pushforward of the right-invariant field at g: d/ds g^{-1} exp(sX) g.
    const Eigen::MatrixXd gm = linalg::expm(y.matrix() + 0.5 * z.matrix());
    const Eigen::MatrixXd gi = linalg::expm(-(y.matrix() + 0.5 * z.matrix()));
    auto curve = [&](double s) {
      return dec->project(ctx.coordinates(gi * linalg::expm(s * x.matrix()) * gm), Part::m);
    };
    const Eigen::VectorXd fd = (curve(h) - curve(-h)) / (2 * h);
    const Eigen::VectorXd exact = dec->project(conjugate(ctx, gi, gm, xc), Part::m);
    r.add("d/ds (g^-1 exp(sX) g . o) = (Ad(g^-1)X)_m", rel(fd - exact, exact), kFdTol);
  }
  return r;
}

StructureReport identity_checks(const DecompositionPtr& dec, std::uint64_t seed) {
  SplitMix64 rng(seed, 0x6964656eULL);
  const Element x = random_m_vector(*dec, rng);
  const Element y = random_m_vector(*dec, rng);
  const Element z = random_m_vector(*dec, rng);
  return identity_checks(dec, x, y, z);
}

}  // namespace wallach
