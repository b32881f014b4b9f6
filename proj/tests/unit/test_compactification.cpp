#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "chainctl/compactification.hpp"
#include "chainctl/errors.hpp"
#include "chainctl/scenarios.hpp"
#include "test_util.hpp"

namespace chainctl {
namespace {

using test::v;

Vec random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Vec s(dim);
  for (int i = 0; i < dim; ++i) s[i] = g(rng);
  return s.normalized();
}

TEST(SpherePoint, RenormalizesAndRejectsBadInput) {
  SpherePoint s(v({3, 4}));
  EXPECT_NEAR(s.coords().norm(), 1.0, 1e-15);
  EXPECT_THROW(SpherePoint(v({0, 0})), InputError);
  EXPECT_THROW(SpherePoint(v({NAN, 1})), InputError);
}

TEST(EmbedH, Origin) {
  EXPECT_EQ(embed_h(v({0, 0})).coords(), v({0, 0, 1}));
}

TEST(EmbedH, UnitVector) {
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LT((embed_h(v({1, 0})).coords() - v({r, 0, r})).norm(), 1e-15);
}

TEST(EmbedH, HeightDecreasesAlongRay) {
  const Vec dir = v({0.6, -0.8});
  double last = 1.0;
  for (double r : {1.0, 10.0, 100.0}) {
    const double h = equator_height(embed_h(r * dir));
    EXPECT_GT(h, 0.0);
    EXPECT_LT(h, last);
    last = h;
  }
}

TEST(EmbedH, RejectsNonFinite) { EXPECT_THROW(embed_h(v({INFINITY, 0})), InputError); }

TEST(EmbedHMinus, SouthPoleAndAntipode) {
  EXPECT_EQ(embed_h_minus(v({0})).coords(), v({0, -1}));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x(-10, 10);
  for (int k = 0; k < 50; ++k) {
    const Vec p = v({x(rng), x(rng)});
    EXPECT_EQ(embed_h_minus(p).coords(), antipode(embed_h(p)).coords());
  }
}

TEST(HInverse, Examples) {
  EXPECT_EQ(h_inverse(SpherePoint(v({0, 0, 1}))), v({0, 0}));
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LT((h_inverse(SpherePoint(v({r, 0, r}))) - v({1, 0})).norm(), 1e-15);
  EXPECT_THROW(h_inverse(SpherePoint(v({1, 0, 0}))), EquatorError);
}

TEST(HInverse, RoundTripRelative) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> x(-1000, 1000);
  for (int k = 0; k < 1000; ++k) {
    const Vec p = v({x(rng), x(rng)});
    const Vec back = h_inverse(embed_h(p));
    EXPECT_LE((back - p).lpNorm<Eigen::Infinity>(), 1e-10 * std::max(1.0, p.lpNorm<Eigen::Infinity>()));
  }
}

TEST(EmbedH, LipschitzBound) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> x(-10, 10);
  for (int k = 0; k < 10000; ++k) {
    const Vec a = v({x(rng), x(rng)});
    const Vec b = v({x(rng), x(rng)});
    EXPECT_LE(sphere_distance(embed_h(a), embed_h(b)), 2.0 * (a - b).lpNorm<Eigen::Infinity>() + 1e-15);
  }
}

TEST(SphereField, NorthPoleGivesOffset) {
  const Scenario s = example2_scenario(1.1, 0.5);
  const ExtendedBilinearSystem ext = extend(s.system);
  const Vec u = v({0.7});
  const Vec f = sphere_field(ext, SpherePoint(v({0, 0, 1})), u);
  const Vec expected = s.system.offset(u);
  EXPECT_LT((f.head(2) - expected).norm(), 1e-15);
  EXPECT_EQ(f[2], 0.0);
}

TEST(SphereField, TangentOddAndEquatorInvariant) {
  const Scenario s = example2_scenario(1.1, 0.5);
  const ExtendedBilinearSystem ext = extend(s.system);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.1, 1.1);
  for (int k = 0; k < 1000; ++k) {
    const SpherePoint p(random_unit(rng, 3));
    const Vec uu = v({u(rng)});
    const Vec f = sphere_field(ext, p, uu);
    EXPECT_LT(std::abs(f.dot(p.coords())), 1e-12);
    EXPECT_LT((sphere_field(ext, antipode(p), uu) + f).lpNorm<Eigen::Infinity>(), 1e-15);
    Vec e = p.coords();
    e[2] = 0.0;
    EXPECT_EQ(sphere_field(ext, SpherePoint(e), uu)[2], 0.0);
  }
}

TEST(SphereField, RejectsControlOutsideRange) {
  const ExtendedBilinearSystem ext = extend(example2_scenario(1.1, 0.5).system);
  EXPECT_THROW(sphere_field(ext, SpherePoint(v({0, 0, 1})), v({2.0})), InputError);
}

TEST(SphereIntegrate, Example2EquilibriumFixed) {
  const ExtendedBilinearSystem ext = extend(example2_scenario(1.1, 0.5).system);
  const SpherePoint s0 = embed_h(v({0.5, 0}));
  const SpherePoint s = sphere_integrate(ext, s0, ControlSignal::constant(v({0})), 0, 10, 1e-3);
  EXPECT_LT(sphere_distance(s, s0), 1e-8);
}

TEST(SphereIntegrate, UnitNormAndEquatorStaysOnEquator) {
  const ExtendedBilinearSystem ext = extend(example2_scenario(1.1, 0.5).system);
  std::mt19937_64 rng(17);
  for (int k = 0; k < 50; ++k) {
    Vec e = random_unit(rng, 3);
    e[2] = 0.0;
    const SpherePoint s = sphere_integrate(ext, SpherePoint(e), ControlSignal::constant(v({0.3})), 0, 2, 1e-3);
    EXPECT_NEAR(s.coords().norm(), 1.0, 1e-15);
    EXPECT_LT(std::abs(s[2]), 1e-9);
  }
}

TEST(SphereIntegrate, AntipodalEquivarianceAndHemisphereInvariance) {
  const ExtendedBilinearSystem ext = extend(example2_scenario(1.1, 0.5).system);
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1.1, 1.1);
  for (int k = 0; k < 50; ++k) {
    const SpherePoint p(random_unit(rng, 3));
    const ControlSignal c = ControlSignal::constant(v({u(rng)}));
    const SpherePoint a = sphere_integrate(ext, p, c, 0, 1.5, 1e-3);
    const SpherePoint b = sphere_integrate(ext, antipode(p), c, 0, 1.5, 1e-3);
    EXPECT_LT((a.coords() + b.coords()).lpNorm<Eigen::Infinity>(), 1e-9);
    EXPECT_EQ(std::signbit(a[2]), std::signbit(p[2]));
  }
}

TEST(SphereIntegrate, SouthernConjugacy) {
  const Scenario s = example2_scenario(1.1, 0.5);
  const ExtendedBilinearSystem ext = extend(s.system);
  const Vec x = v({1.2, -0.4});
  const ControlSignal c = ControlSignal::constant(v({-0.6}));
  const SpherePoint north = sphere_integrate(ext, embed_h(x), c, 0, 2, 1e-3);
  const SpherePoint south = sphere_integrate(ext, embed_h_minus(x), c, 0, 2, 1e-3);
  EXPECT_LT((north.coords() + south.coords()).lpNorm<Eigen::Infinity>(), 1e-9);
}

TEST(Conjugacy, ZeroTime) {
  const Scenario s = example2_scenario(1.1, 0.5);
  EXPECT_EQ(conjugacy_residual(s.system, v({1, 2}), ControlSignal::constant(v({0})), 0.0, 1e-3), 0.0);
}

TEST(Conjugacy, Example2RandomTrials) {
  const Scenario s = example2_scenario(1.1, 0.5);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> x(-3, 3), u(-1.1, 1.1);
  for (int k = 0; k < 10; ++k) {
    const double r = conjugacy_residual(s.system, v({x(rng), x(rng)}), ControlSignal::constant(v({u(rng)})), 5.0, 1e-3);
    EXPECT_LT(r, 1e-6);
  }
}

TEST(Conjugacy, ScalarHyperbolic) {
  const Scenario s = scalar_hyperbolic_scenario();
  EXPECT_LT(conjugacy_residual(s.system, v({5}), ControlSignal::constant(v({1})), 3.0, 1e-3), 1e-6);
}

TEST(Projective, CanonicalAndDistance) {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 100; ++k) {
    const SpherePoint p(random_unit(rng, 3));
    EXPECT_LT((antipode(antipode(p)).coords() - p.coords()).lpNorm<Eigen::Infinity>(), 1e-15);
    const ProjectivePoint a = projective_canonical(p);
    const ProjectivePoint b = projective_canonical(antipode(p));
    EXPECT_LT((a.representative().coords() - b.representative().coords()).lpNorm<Eigen::Infinity>(), 1e-15);
    EXPECT_GT(a.representative()[0], 0.0);
    EXPECT_LT(projective_distance(a, b), 1e-15);
  }
  const ProjectivePoint tie = projective_canonical(SpherePoint(v({0, -1, 0})));
  EXPECT_EQ(tie.representative().coords(), v({0, 1, 0}));
}

TEST(EquatorHeight, NorthPole) { EXPECT_EQ(equator_height(SpherePoint(v({0, 0, 1}))), 1.0); }

}  // namespace
}  // namespace chainctl
