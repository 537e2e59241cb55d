#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "wallach/errors.hpp"
#include "wallach/geodesics.hpp"
#include "wallach/oracle.hpp"
#include "wallach/verify.hpp"

using namespace wallach;

namespace {

double residual_norm(const std::array<double, 9>& r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return std::sqrt(s);
}

const Grid kGrid{0.0, 2.0, 20};

}  // namespace

TEST(Twist, ZeroFactorsGiveIdentity) {
  const auto dec = build_su3_flag();
  const auto& ctx = dec->context();
  const Eigen::MatrixXd t = twist(Element::zero(ctx), Element::zero(ctx), 1.7);
  EXPECT_EQ(t, Eigen::MatrixXd::Identity(ctx->dim(), ctx->dim()));
}

TEST(Twist, DerivativeAtZero) {
  const auto dec = build_stiefel(3);
  const auto& ctx = dec->context();
  SplitMix64 rng(60);
  const Element x = random_element(ctx, rng);
  const Element y = random_element(ctx, rng);
  const Element z = random_element(ctx, rng);
  const double h = 1e-5;
  const Eigen::VectorXd fd = (twist(y, z, h) - twist(y, z, -h)) * x.coeffs() / (2 * h);
  EXPECT_LE((fd - bracket(x, y + z).coeffs()).norm(), 1e-8);
}

TEST(Twist, IsAutomorphism) {
  const auto dec = build_so_blocks(2, 2, 2);
  const auto& ctx = dec->context();
  SplitMix64 rng(61);
  const Element y = random_element(ctx, rng);
  const Element z = random_element(ctx, rng);
  const Eigen::MatrixXd t = twist(y, z, 0.8);
  const Element a = random_element(ctx, rng);
  const Element b = random_element(ctx, rng);
  const Eigen::VectorXd lhs = t * bracket(a, b).coeffs();
  const Eigen::VectorXd rhs = ctx->bracket(t * a.coeffs(), t * b.coeffs());
  EXPECT_LE((lhs - rhs).norm(), 1e-10);
}

TEST(GwDefect, BiInvariantSingleExponential) {
  for (const auto& dec : test::catalog_spaces()) {
    SplitMix64 rng(62);
    const DiagonalMetric g(dec, {1, 1, 1});
    const ProductExpCurve curve(dec, {random_m_vector(*dec, rng)});
    const CurveCheck c = check_curve(curve, g, kGrid, false);
    EXPECT_LE(c.max_abs_gw, 1e-13) << dec->name();
  }
}

TEST(GwDefect, GenericMetricSingleExponentialFails) {
  const auto dec = build_so_blocks(2, 2, 2);
  SplitMix64 rng(63);
  const Element x = random_module_vector(*dec, 1, rng) + random_module_vector(*dec, 2, rng) +
                    random_module_vector(*dec, 3, rng);
  const DiagonalMetric g(dec, {1.0, 1.3, 0.7});
  const ProductExpCurve curve(dec, {x});
  EXPECT_GT(gw_defect_all(curve, g, 0.0).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(GwDefect, LinearInW) {
  const auto dec = build_su3_flag();
  const auto& ctx = dec->context();
  SplitMix64 rng(64);
  const DiagonalMetric g(dec, {1.0, 0.6, 2.2});
  const ProductExpCurve curve(
      dec, {random_element(ctx, rng), random_element(ctx, rng), random_element(ctx, rng)});
  const Element w1 = random_m_vector(*dec, rng);
  const Element w2 = random_m_vector(*dec, rng);
  const double alpha = -1.7;
  for (double t : {0.0, 0.6, 1.5}) {
    const double lhs = gw_defect(curve, g, alpha * w1 + w2, t);
    const double rhs = alpha * gw_defect(curve, g, w1, t) + gw_defect(curve, g, w2, t);
    EXPECT_NEAR(lhs, rhs, 1e-11);
  }
}

TEST(GwDefect, KComponentOfWIsProjectedWithNote) {
  const auto dec = build_stiefel(3);
  const auto& ctx = dec->context();
  SplitMix64 rng(65);
  const DiagonalMetric g(dec, {1.0, 1.0, 0.5});
  const ProductExpCurve curve(dec, {random_element(ctx, rng), random_element(ctx, rng)});
  const Element w = random_m_vector(*dec, rng);
  const Element k = project(random_element(ctx, rng), *dec, Part::k);
  std::vector<std::string> notes;
  EXPECT_NEAR(gw_defect(curve, g, w + k, 0.7, &notes), gw_defect(curve, g, w, 0.7), 1e-14);
  EXPECT_EQ(notes.size(), 1u);
}

TEST(GwDefect, RejectsMoreThanThreeFactors) {
  const auto dec = build_stiefel(2);
  const auto& ctx = dec->context();
  const ProductExpCurve curve(dec, std::vector<Element>(4, Element::basis(ctx, 0)));
  EXPECT_THROW(gw_defect_all(curve, DiagonalMetric(dec, {1, 1, 1}), 0.5), SchemaError);
}

TEST(ClosedForm, AllCasesOnStiefelAndSu3) {
  for (const auto& dec : {build_stiefel(3), build_su3_flag()}) {
    SplitMix64 rng(66);
    for (int c = 1; c <= 3; ++c) {
      for (double cc : {0.25, 0.5, 1.5, 2.0}) {
        const auto cw = closed_form_geodesic(dec, c, random_module_vector(*dec, 1, rng),
                                             random_module_vector(*dec, 2, rng),
                                             random_module_vector(*dec, 3, rng), cc);
        const CurveCheck chk = check_curve(cw.curve, cw.metric, kGrid, false);
        EXPECT_LE(chk.max_abs_gw, 1e-9) << dec->name() << " case " << c << " c " << cc;
        EXPECT_LE(chk.max_defect_norm, 1e-9) << dec->name() << " case " << c << " c " << cc;
      }
    }
  }
}

TEST(ClosedForm, FactorsAndMetricPerCase) {
  const auto dec = build_so_blocks(2, 2, 2);
  SplitMix64 rng(67);
  const Element x1 = random_module_vector(*dec, 1, rng);
  const Element x2 = random_module_vector(*dec, 2, rng);
  const Element x3 = random_module_vector(*dec, 3, rng);
  const double c = 0.3;
  const auto c2 = closed_form_geodesic(dec, 2, x1, x2, x3, c);
  EXPECT_EQ(c2.metric.lambdas(), (std::array<double, 3>{1.0, c, 1.0}));
  EXPECT_LE((c2.curve.factors()[0] - (x1 + c * x2 + x3)).coeffs().norm(), 1e-15);
  EXPECT_LE((c2.curve.factors()[1] - (1.0 - c) * x2).coeffs().norm(), 1e-15);
  EXPECT_LE((c2.curve.initial_velocity() - (x1 + x2 + x3)).coeffs().norm(), 1e-15);
  EXPECT_EQ(closed_form_geodesic(dec, 3, x1, x2, x3, c).metric.lambdas()[0], c);
  EXPECT_EQ(closed_form_geodesic(dec, 1, x1, x2, x3, c).metric.lambdas()[2], c);

  const auto unit = closed_form_geodesic(dec, 1, x1, x2, x3, 1.0);
  EXPECT_EQ(unit.curve.factors()[1].coeffs().norm(), 0.0);
}

TEST(ClosedForm, InputErrors) {
  const auto dec = build_stiefel(3);
  SplitMix64 rng(68);
  const Element x1 = random_module_vector(*dec, 1, rng);
  const Element x2 = random_module_vector(*dec, 2, rng);
  const Element x3 = random_module_vector(*dec, 3, rng);
  EXPECT_THROW(closed_form_geodesic(dec, 1, x2, x1, x3, 0.5), WrongModule);
  EXPECT_THROW(closed_form_geodesic(dec, 1, x1, x2, x3, 0.0), InvalidMetric);
  EXPECT_THROW(closed_form_geodesic(dec, 1, x1, x2, x3, -1.0), InvalidMetric);
  EXPECT_THROW(closed_form_geodesic(dec, 4, x1, x2, x3, 0.5), InvalidMetric);
  const auto other = build_stiefel(3);
  EXPECT_THROW(closed_form_geodesic(other, 1, x1, x2, x3, 0.5), ContextMismatch);
}

TEST(ClosedForm, ReparametrizationScaling) {
  const auto dec = build_stiefel(3);
  SplitMix64 rng(69);
  const Element x1 = random_module_vector(*dec, 1, rng);
  const Element x2 = random_module_vector(*dec, 2, rng);
  const Element x3 = random_module_vector(*dec, 3, rng);
  const double s = 1.7;
  const auto base = closed_form_geodesic(dec, 1, x1, x2, x3, 0.5);
  const auto fast = closed_form_geodesic(dec, 1, s * x1, s * x2, s * x3, 0.5);
  for (double t : {0.2, 0.5, 1.0}) {
    EXPECT_LE(coset_distance(base.curve.lift(s * t), fast.curve.lift(t), *dec), 1e-10);
  }
}

TEST(Dohira, GroupedStiefelCoincidesWithCaseOne) {
  const auto dec = build_stiefel(3);
  const TwoSummandView view(dec, 3);
  SplitMix64 rng(70);
  for (double c : {0.5, 2.0}) {
    const Element x1 = random_module_vector(*dec, 1, rng);
    const Element x2 = random_module_vector(*dec, 2, rng);
    const Element x3 = random_module_vector(*dec, 3, rng);
    const auto d = dohira_geodesic(view, c, x1 + x2, x3);
    const auto t = closed_form_geodesic(dec, 1, x1, x2, x3, c);
    ASSERT_EQ(d.curve.size(), t.curve.size());
    for (std::size_t i = 0; i < d.curve.size(); ++i) {
      EXPECT_LE((d.curve.factors()[i] - t.curve.factors()[i]).coeffs().norm(), 1e-15);
    }
    EXPECT_EQ(d.metric.lambdas(), t.metric.lambdas());
    const CurveCheck chk = check_curve(d.curve, d.metric, kGrid, false);
    EXPECT_LE(chk.max_abs_gw, 1e-9);
    EXPECT_LE(chk.max_defect_norm, 1e-9);
  }
}

TEST(Dohira, UnitParameterIsSingleExponentialAndModulesChecked) {
  const auto dec = build_product_spheres();
  const TwoSummandView view(dec, 2);
  SplitMix64 rng(71);
  const Element x1 = random_module_vector(*dec, 1, rng) + random_module_vector(*dec, 3, rng);
  const Element x2 = random_module_vector(*dec, 2, rng);
  const auto d = dohira_geodesic(view, 1.0, x1, x2);
  EXPECT_EQ(d.curve.factors()[1].coeffs().norm(), 0.0);
  EXPECT_THROW(dohira_geodesic(view, 0.5, x2, x2), WrongModule);
  EXPECT_THROW(dohira_geodesic(view, 0.5, x1, x1), WrongModule);
}

TEST(Homogeneous, ProductSpheresAnyMetric) {
  const auto dec = build_product_spheres();
  SplitMix64 rng(72);
  const DiagonalMetric g(dec, {1.0, 2.7, 0.3});
  const Element x = random_m_vector(*dec, rng);
  const ProductExpCurve curve = homogeneous_geodesic(dec, g, x);
  EXPECT_LE(check_curve(curve, g, kGrid, false).max_defect_norm, 1e-10);
  const ProductExpCurve still = homogeneous_geodesic(dec, g, Element::zero(dec->context()));
  EXPECT_EQ(check_curve(still, g, kGrid, false).max_defect_norm, 0.0);
}

TEST(Homogeneous, HypothesisEnforced) {
  for (const auto& dec : {build_stiefel(3), build_so_blocks(1, 1, 1), build_su3_flag()}) {
    SplitMix64 rng(73);
    const DiagonalMetric g(dec, {1.0, 1.3, 0.7});
    EXPECT_THROW(homogeneous_geodesic(dec, g, random_m_vector(*dec, rng)), HypothesisViolated);
  }
}

TEST(Homogeneous, SingleModuleVectorIsGeodesicEverywhere) {
  for (const auto& dec : test::catalog_spaces()) {
    SplitMix64 rng(74);
    const DiagonalMetric g(dec, {1.0, 1.3, 0.7});
    for (int i = 1; i <= 3; ++i) {
      const ProductExpCurve curve(dec, {random_module_vector(*dec, i, rng)});
      const CurveCheck chk = check_curve(curve, g, kGrid, false);
      EXPECT_LE(chk.max_abs_gw, 1e-12) << dec->name();
      EXPECT_LE(chk.max_defect_norm, 1e-12) << dec->name();
    }
  }
}

TEST(MetricCase, Inference) {
  auto check = [](std::array<double, 3> l, int expect_case, double expect_c) {
    const MetricCase mc = infer_metric_case(l);
    EXPECT_EQ(mc.metric_case, expect_case);
    if (expect_case != 0) {
      EXPECT_DOUBLE_EQ(mc.c, expect_c);
    }
  };
  check({1, 1, 0.5}, 1, 0.5);
  check({2, 2, 1}, 1, 0.5);
  check({1, 3, 1}, 2, 3.0);
  check({4, 2, 2}, 3, 2.0);
  check({2, 2, 2}, 1, 1.0);
  check({1, 1.3, 0.7}, 0, 0.0);
  double c = 0.0;
  EXPECT_TRUE(metric_matches_case({1, 1, 1}, 3, c));
  EXPECT_DOUBLE_EQ(c, 1.0);
  EXPECT_FALSE(metric_matches_case({1, 1, 0.5}, 2, c));
  EXPECT_TRUE(metric_matches_case({1, 1 + 1e-14, 0.5}, 1, c));
  EXPECT_FALSE(metric_matches_case({1, 1 + 1e-9, 0.5}, 1, c));
}

TEST(Restriction, ValuesAtTheOrigin) {
  const RestrictionCoefficients zero;
  EXPECT_LE(residual_norm(restriction_residual(zero, 1.0, 1.0)), 0.0);
  const auto r = restriction_residual(zero, 1.3, 0.7);
  EXPECT_NEAR(r[0], -0.6, 1e-15);
  EXPECT_NEAR(r[1], -0.3 / 1.3, 1e-15);
  EXPECT_NEAR(r[1], -0.23077, 1e-5);
  EXPECT_THROW(restriction_residual(zero, 0.0, 1.0), InvalidMetric);
  EXPECT_THROW(restriction_residual(zero, 1.0, -2.0), InvalidMetric);
}

TEST(Restriction, JacobianMatchesFiniteDifferences) {
  SplitMix64 rng(75);
  for (int trial = 0; trial < 10; ++trial) {
    RestrictionCoefficients p;
    for (int i = 0; i < 3; ++i) {
      p.a[i] = rng.uniform(-2, 2);
      p.b[i] = rng.uniform(-2, 2);
    }
    const double l2 = rng.uniform(0.3, 3);
    const double l3 = rng.uniform(0.3, 3);
    const auto jac = restriction_jacobian(p, l2, l3);
    const double h = 1e-6;
    for (int k = 0; k < 6; ++k) {
      RestrictionCoefficients up = p;
      RestrictionCoefficients dn = p;
      (k < 3 ? up.a[k] : up.b[k - 3]) += h;
      (k < 3 ? dn.a[k] : dn.b[k - 3]) -= h;
      const auto ru = restriction_residual(up, l2, l3);
      const auto rd = restriction_residual(dn, l2, l3);
      for (int e = 0; e < 9; ++e) EXPECT_NEAR(jac(e, k), (ru[e] - rd[e]) / (2 * h), 1e-7);
    }
  }
}

TEST(Restriction, FamilyValuesFromTheText) {
  const auto s1 = solution_families(0.5, 0.2)[0];
  EXPECT_EQ(s1.family, "s1");
  EXPECT_DOUBLE_EQ(s1.b[2], 0.3);
  EXPECT_LE(residual_norm(restriction_residual(s1.coefficients(), 1.0, 0.5)), 1e-12);

  const auto s2 = solution_families(0.5, 0.1)[1];
  EXPECT_EQ(s2.family, "s2");
  EXPECT_DOUBLE_EQ(s2.a[2], 0.5);
  EXPECT_DOUBLE_EQ(s2.b[0], 0.1);
  EXPECT_DOUBLE_EQ(s2.b[1], 0.1);
  EXPECT_DOUBLE_EQ(s2.b[2], 0.05);
  EXPECT_LE(residual_norm(restriction_residual(s2.coefficients(), 1.0, 0.5)), 1e-12);

  const auto s5 = solution_families(2.0, 0.3)[4];
  EXPECT_EQ(s5.family, "s5");
  EXPECT_DOUBLE_EQ(s5.a[0], 0.5);
  EXPECT_DOUBLE_EQ(s5.b[1], 0.6);
  EXPECT_DOUBLE_EQ(s5.b[2], 0.6);
  EXPECT_LE(residual_norm(restriction_residual(s5.coefficients(), 2.0, 2.0)), 1e-12);
}

TEST(Restriction, AllFamiliesSolveAndSumExactly) {
  SplitMix64 rng(76);
  for (int trial = 0; trial < 50; ++trial) {
    const double l = rng.uniform(0.1, 4.0);
    const double e = rng.uniform(-3.0, 3.0);
    const auto fams = solution_families(l, e);
    ASSERT_EQ(fams.size(), 6u);
    for (const auto& s : fams) {
      EXPECT_LE(residual_norm(restriction_residual(s.coefficients(), s.lambda2, s.lambda3)),
                1e-12)
          << s.family << " l=" << l << " e=" << e;
      EXPECT_TRUE(s.sums_exact()) << s.family;
      EXPECT_EQ(s.free_parameters.size(), 2u);
    }
  }
  EXPECT_THROW(solution_families(0.0, 0.1), InvalidMetric);
}

TEST(Restriction, UnitLambdaReducesToBiInvariant) {
  const auto s1 = solution_families(1.0, 0.0)[0];
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(s1.a[i], 0.0);
    EXPECT_EQ(s1.b[i], 0.0);
  }
}

TEST(Restriction, FamiliesGiveGeodesicsOnSpaces) {
  // The coefficients define X = sum c_i X_i, Y = sum b_i X_i, Z = sum a_i X_i;
  // G_W(0), its derivative and G_W on the whole grid vanish.
  for (const auto& dec : {build_so_blocks(2, 2, 2), build_stiefel(3), build_su3_flag()}) {
    SplitMix64 rng(77);
    const std::array<Element, 3> x{random_module_vector(*dec, 1, rng),
                                   random_module_vector(*dec, 2, rng),
                                   random_module_vector(*dec, 3, rng)};
    auto combo = [&](const std::array<double, 3>& k) { return k[0] * x[0] + k[1] * x[1] + k[2] * x[2]; };
    for (const auto& s : solution_families(0.6, 0.37)) {
      const ProductExpCurve curve(dec, {combo(s.c), combo(s.b), combo(s.a)});
      const DiagonalMetric g(dec, {1.0, s.lambda2, s.lambda3});
      const double h = 1e-4;
      const Eigen::VectorXd up = gw_defect_all(curve, g, h);
      const Eigen::VectorXd dn = gw_defect_all(curve, g, -h);
      const Eigen::VectorXd derivative = (up - dn) / (2 * h);
      EXPECT_LE(gw_defect_all(curve, g, 0.0).cwiseAbs().maxCoeff(), 1e-12) << s.family;
      EXPECT_LE(derivative.cwiseAbs().maxCoeff(), 1e-8) << s.family;
      EXPECT_LE(check_curve(curve, g, kGrid, false).max_abs_gw, 1e-9) << s.family;
    }
  }
}

TEST(Restriction, NonzeroResidualMeansNonzeroDefect) {
  const auto dec = build_stiefel(3);
  SplitMix64 rng(78);
  const std::array<Element, 3> x{random_module_vector(*dec, 1, rng),
                                 random_module_vector(*dec, 2, rng),
                                 random_module_vector(*dec, 3, rng)};
  const RestrictionCoefficients p{{0.3, -0.2, 0.5}, {0.1, 0.4, -0.3}};
  auto combo = [&](auto k) { return k[0] * x[0] + k[1] * x[1] + k[2] * x[2]; };
  const std::array<double, 3> c{1 - p.a[0] - p.b[0], 1 - p.a[1] - p.b[1], 1 - p.a[2] - p.b[2]};
  const ProductExpCurve curve(dec, {combo(c), combo(p.b), combo(p.a)});
  const DiagonalMetric g(dec, {1.0, 0.6, 1.4});
  EXPECT_GT(residual_norm(restriction_residual(p, 0.6, 1.4)), 0.5);
  EXPECT_GT(gw_defect_all(curve, g, 0.0).cwiseAbs().maxCoeff(), 0.1);
}

TEST(Restriction, AdmissibleFamilies) {
  auto names = [](const std::vector<RestrictionSolution>& v) {
    std::vector<std::string> out;
    for (const auto& s : v) out.push_back(s.family);
    return out;
  };
  EXPECT_EQ(names(admissible_families(1.0, 0.5, 0.2)), (std::vector<std::string>{"s1", "s2"}));
  EXPECT_EQ(names(admissible_families(0.4, 1.0, 0.2)), (std::vector<std::string>{"s3", "s4"}));
  EXPECT_EQ(names(admissible_families(2.0, 2.0, 0.2)), (std::vector<std::string>{"s5", "s6"}));
  EXPECT_TRUE(admissible_families(1.3, 0.7, 0.2).empty());
  EXPECT_EQ(admissible_families(1.0, 1.0, 0.2).size(), 6u);
}

TEST(NonexistenceProbe, GenericFloorAndDeterminism) {
  const ProbeResult p = nonexistence_probe(1.3, 0.7, 200, 5);
  EXPECT_GT(p.best_residual, 1e-4);
  EXPECT_EQ(p.starts, 200);
  EXPECT_NEAR(residual_norm(restriction_residual(p.best, 1.3, 0.7)), p.best_residual, 1e-14);
  EXPECT_EQ(nonexistence_probe(1.3, 0.7, 20, 9).best_residual,
            nonexistence_probe(1.3, 0.7, 20, 9).best_residual);
}

TEST(NonexistenceProbe, GateRejectsNonGenericMetrics) {
  EXPECT_THROW(nonexistence_probe(1.0, 0.5, 10), PreconditionError);
  EXPECT_THROW(nonexistence_probe(2.0, 2.0, 10), PreconditionError);
  EXPECT_THROW(nonexistence_probe(1.3, 1.33, 10), PreconditionError);
  EXPECT_THROW(nonexistence_probe(1.3, 0.7, 0), PreconditionError);
  EXPECT_THROW(nonexistence_probe(-1.0, 0.7, 10), InvalidMetric);
}
