#include <gtest/gtest.h>

#include "support.hpp"
#include "wallach/errors.hpp"
#include "wallach/metrics.hpp"

using namespace wallach;

namespace {

std::array<double, 3> random_lambdas(SplitMix64& rng) {
  return {rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0)};
}

}  // namespace

TEST(DiagonalMetric, RejectsNonPositive) {
  const auto dec = build_stiefel(2);
  EXPECT_THROW(DiagonalMetric(dec, {1.0, 0.0, 1.0}), InvalidMetric);
  EXPECT_THROW(DiagonalMetric(dec, {-1.0, 1.0, 1.0}), InvalidMetric);
  EXPECT_THROW(DiagonalMetric(dec, {1.0, 1.0, std::nan("")}), InvalidMetric);
}

TEST(DiagonalMetric, BiInvariantIsMinusKillingOnM) {
  for (const auto& dec : test::catalog_spaces()) {
    const DiagonalMetric g(dec, {1, 1, 1});
    SplitMix64 rng(40);
    const Element x = random_m_vector(*dec, rng);
    const Element y = random_m_vector(*dec, rng);
    EXPECT_NEAR(inner(g, x, y), -killing_form(x, y), 1e-13) << dec->name();
  }
}

TEST(DiagonalMetric, BlockwiseGram) {
  for (const auto& dec : test::catalog_spaces()) {
    SplitMix64 rng(41);
    const auto l = random_lambdas(rng);
    const DiagonalMetric g(dec, l);
    const auto& m = dec->indices(Part::m);
    const auto& labels = dec->labels();
    const Eigen::MatrixXd& b = dec->context()->killing();
    double worst = 0.0;
    for (std::size_t a = 0; a < m.size(); ++a) {
      for (std::size_t c = 0; c < m.size(); ++c) {
        const double expected = labels[m[a]] == labels[m[c]] ? -l[labels[m[a]] - 1] * b(m[a], m[c]) : 0.0;
        worst = std::max(worst, std::abs(g.gram()(a, c) - expected));
      }
    }
    EXPECT_LE(worst, 1e-12) << dec->name();
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g.gram()).eigenvalues().minCoeff(), 0.0);
  }
}

TEST(DiagonalMetric, ScalingCovariance) {
  const auto dec = build_so_blocks(2, 3, 4);
  const DiagonalMetric g(dec, {0.5, 1.5, 2.0});
  const DiagonalMetric h(dec, {1.5, 4.5, 6.0});
  EXPECT_LE((h.gram() - 3.0 * g.gram()).cwiseAbs().maxCoeff(), 1e-12);
  const auto n = h.normalized();
  EXPECT_DOUBLE_EQ(n[0], 1.0);
  EXPECT_DOUBLE_EQ(n[1], 3.0);
  EXPECT_DOUBLE_EQ(n[2], 4.0);
}

TEST(DiagonalMetric, ModulesAreOrthogonal) {
  for (const auto& dec : test::catalog_spaces()) {
    SplitMix64 rng(42);
    const DiagonalMetric g(dec, random_lambdas(rng));
    EXPECT_EQ(inner(g, random_module_vector(*dec, 1, rng), random_module_vector(*dec, 2, rng)), 0.0);
  }
}

TEST(DiagonalMetric, AdKInvariance) {
  for (const auto& dec : test::catalog_spaces()) {
    if (dec->part_dim(Part::k) == 0) continue;
    SplitMix64 rng(43);
    const DiagonalMetric g(dec, random_lambdas(rng));
    const Element zeta = project(random_element(dec->context(), rng), *dec, Part::k);
    const GroupElement kel = matrix_exp(zeta, rng.uniform(-2, 2));
    const Element x = random_m_vector(*dec, rng);
    const Element y = random_m_vector(*dec, rng);
    EXPECT_NEAR(inner(g, adjoint(kel, x), adjoint(kel, y)), inner(g, x, y), 1e-10) << dec->name();
  }
}

TEST(UMap, VanishesForBiInvariantMetric) {
  for (const auto& dec : test::catalog_spaces()) {
    const DiagonalMetric g(dec, {2, 2, 2});
    SplitMix64 rng(44);
    const Element x = random_m_vector(*dec, rng);
    const Element y = random_m_vector(*dec, rng);
    EXPECT_LE(u_map(g, x, y).coeffs().norm(), 1e-13) << dec->name();
  }
}

TEST(UMap, DefiningIdentityOnTheBasis) {
  for (const auto& dec : test::catalog_spaces()) {
    SplitMix64 rng(45);
    const DiagonalMetric g(dec, random_lambdas(rng));
    const auto& ctx = dec->context();
    const Element x = random_m_vector(*dec, rng);
    const Element y = random_m_vector(*dec, rng);
    const Element u = u_map(g, x, y);
    for (int zi : dec->indices(Part::m)) {
      const Element z = Element::basis(ctx, zi);
      const double rhs = inner(g, project(bracket(z, x), *dec, Part::m), y) +
                         inner(g, x, project(bracket(z, y), *dec, Part::m));
      EXPECT_NEAR(2.0 * inner(g, u, z), rhs, 1e-12) << dec->name();
    }
    EXPECT_LE(project(u, *dec, Part::k).coeffs().norm(), 0.0);
  }
}

TEST(UMap, SymmetricBilinearAndEnergyPreserving) {
  for (const auto& dec : test::catalog_spaces()) {
    SplitMix64 rng(46);
    const DiagonalMetric g(dec, random_lambdas(rng));
    for (int trial = 0; trial < 5; ++trial) {
      const Element x = random_m_vector(*dec, rng);
      const Element y = random_m_vector(*dec, rng);
      const Element z = random_m_vector(*dec, rng);
      const double s = rng.uniform(-3, 3);
      EXPECT_LE((u_map(g, x, y) - u_map(g, y, x)).coeffs().norm(), 1e-10);
      EXPECT_LE((u_map(g, s * x + z, y) - (s * u_map(g, x, y) + u_map(g, z, y))).coeffs().norm(),
                1e-10);
      EXPECT_NEAR(inner(g, u_map(g, x, x), x), 0.0, 1e-12);
    }
  }
}

TEST(UMap, SingleModuleArgumentOnSymmetricGrouping) {
  // With equal scaling on the grouped modules, U(X,X) = 0 for X in one module.
  const auto dec = build_stiefel(3);
  const DiagonalMetric g(dec, {1.0, 1.0, 0.4});
  SplitMix64 rng(47);
  for (int i = 1; i <= 3; ++i) {
    const Element x = random_module_vector(*dec, i, rng);
    EXPECT_LE(u_map(g, x, x).coeffs().norm(), 1e-13);
  }
}

TEST(UMap, ClosedFormOnWallachTriples) {
  // U(X1, X2) = (l2 - l1) / (2 l3) [X1, X2] for X1 in m1, X2 in m2.
  const auto dec = build_su3_flag();
  SplitMix64 rng(48);
  const std::array<double, 3> l{0.7, 1.9, 1.3};
  const DiagonalMetric g(dec, l);
  const Element x1 = random_module_vector(*dec, 1, rng);
  const Element x2 = random_module_vector(*dec, 2, rng);
  const Element expected = ((l[1] - l[0]) / (2.0 * l[2])) * bracket(x1, x2);
  EXPECT_LE((u_map(g, x1, x2) - expected).coeffs().norm(), 1e-12);
}

TEST(PullbackVelocity, SingleExponentialInM) {
  const auto dec = build_so_blocks(2, 2, 2);
  SplitMix64 rng(49);
  const Element x = random_m_vector(*dec, rng);
  const ProductExpCurve curve(dec, {x});
  for (double t : {0.0, 0.8, 1.9}) {
    const auto [w, v] = pullback_velocity(curve, t);
    EXPECT_LE((w - x).coeffs().norm(), 1e-13);
    EXPECT_LE((v - x).coeffs().norm(), 1e-13);
  }
}

TEST(PullbackVelocity, TwoFactorsMatchFormulaAndFiniteDifference) {
  const auto dec = build_su3_flag();
  const auto& ctx = dec->context();
  SplitMix64 rng(50);
  const Element a = random_element(ctx, rng);
  const Element b = random_element(ctx, rng);
  const ProductExpCurve curve(dec, {a, b});
  const double t = 0.9;
  const auto [w, v] = pullback_velocity(curve, t);
  const Element expected = adjoint(matrix_exp(b, -t), a) + b;
  EXPECT_LE((w - expected).coeffs().norm(), 1e-13);

  const double h = 1e-5;
  const Eigen::MatrixXd a_dot =
      (curve.lift(t + h).matrix() - curve.lift(t - h).matrix()) / (2 * h);
  const Eigen::VectorXd fd = ctx->coordinates(curve.lift(t).inverse().matrix() * a_dot);
  EXPECT_LE((fd - w.coeffs()).norm(), 1e-8);
}

TEST(PullbackVelocity, InitialVelocityOfTripleProduct) {
  const auto dec = build_stiefel(3);
  SplitMix64 rng(51);
  const auto& ctx = dec->context();
  const Element x = random_element(ctx, rng);
  const Element y = random_element(ctx, rng);
  const Element z = random_element(ctx, rng);
  const ProductExpCurve curve(dec, {x, y, z});
  const auto [w, v] = pullback_velocity(curve, 0.0);
  EXPECT_LE((v - project(x + y + z, *dec, Part::m)).coeffs().norm(), 1e-15);
  EXPECT_LE((curve.initial_velocity() - v).coeffs().norm(), 1e-15);
}

TEST(PullbackVelocity, GaugeCovarianceUnderRightKFactor) {
  const auto dec = build_so_blocks(2, 3, 4);
  const auto& ctx = dec->context();
  SplitMix64 rng(52);
  const Element x = random_element(ctx, rng);
  const Element y = random_element(ctx, rng);
  const Element zeta = project(random_element(ctx, rng), *dec, Part::k);
  const ProductExpCurve plain(dec, {x, y});
  const ProductExpCurve gauged(dec, {x, y, zeta});
  const DiagonalMetric g(dec, {1.0, 2.0, 0.5});
  for (double t : {0.4, 1.3}) {
    const auto [w0, v0] = pullback_velocity(plain, t);
    const auto [w1, v1] = pullback_velocity(gauged, t);
    const Element rotated = adjoint(matrix_exp(zeta, -t), v0);
    EXPECT_LE((v1 - rotated).coeffs().norm(), 1e-10);
    for (int i = 1; i <= 3; ++i) {
      EXPECT_NEAR(g.norm(project(v1, *dec, module_part(i)).coeffs()),
                  g.norm(project(v0, *dec, module_part(i)).coeffs()), 1e-10);
    }
  }
}
