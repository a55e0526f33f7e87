#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bge/distribution.hpp"
#include "bge/quadrature.hpp"
#include "bge/series.hpp"
#include "stat_helpers.hpp"

using bge::BgeDistribution;
using bge::BgeParams;

TEST(BgeParams, RejectsNonPositiveAndNonFinite) {
  EXPECT_THROW(BgeParams(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(BgeParams(1.0, -2.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(BgeParams(1.0, 1.0, std::numeric_limits<double>::infinity(), 1.0), std::invalid_argument);
  EXPECT_THROW(BgeParams(1.0, 1.0, 1.0, std::nan("")), std::invalid_argument);
  EXPECT_TRUE(BgeParams::exponential(2.0).is_exponential());
  EXPECT_TRUE(BgeParams::beta_exponential(2.0, 3.0, 1.0).is_be());
  EXPECT_TRUE(BgeParams::double_generalized_exponential(2.0, 1.0, 3.0).is_dge());
}

TEST(Sample, RejectsBadObservationsWithIndex) {
  EXPECT_THROW(bge::Sample({}), std::invalid_argument);
  try {
    bge::Sample({1.0, 2.0, -0.5});
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find('3'), std::string::npos);
  }
  EXPECT_DOUBLE_EQ(bge::Sample({1.0, 2.0, 3.0}).mean(), 2.0);
}

TEST(Distribution, MatchesHighPrecisionValues) {
  EXPECT_NEAR(BgeDistribution({2, 3, 1.5, 0.8}).pdf(0.5), 0.7430473490913847773, 1e-13);
  EXPECT_NEAR(BgeDistribution({0.4125, 93.4655, 0.92271, 22.6124}).cdf(1.5), 0.47782276756729547695,
              1e-13);
  EXPECT_NEAR(BgeDistribution({2, 3, 1, 1}).survival(3.0), 0.00047520657928673356871, 1e-17);
  EXPECT_NEAR(BgeDistribution({0.5, 2, 1, 0.5}).hazard(0.1), 5.4226394720688372489, 1e-12);
  EXPECT_NEAR(BgeDistribution({2, 2, 1, 1}).quantile(0.5), 0.69314718055994530942, 1e-13);
}

TEST(Distribution, DensityIntegratesToOne) {
  for (double a : {0.3, 1.0, 4.5}) {
    for (double b : {0.4, 1.0, 7.0}) {
      for (double alpha : {0.5, 1.0, 3.0}) {
        const BgeDistribution d({a, b, 1.7, alpha});
        const auto r = bge::quadrature::tanh_sinh_half_line([&](double x) { return d.pdf(x); }, 0.0,
                                                            1e-12, 1e-12, 12);
        EXPECT_NEAR(r.value, 1.0, 1e-8) << a << ' ' << b << ' ' << alpha;
      }
    }
  }
}

TEST(Distribution, CdfIsIntegralOfPdf) {
  const BgeDistribution d({1.5, 2.5, 0.7, 1.3});
  for (double x : {0.1, 1.0, 4.0}) {
    const auto r = bge::quadrature::gauss_kronrod([&](double t) { return d.pdf(t); }, 0.0, x, 1e-14, 1e-13);
    EXPECT_NEAR(r.value, d.cdf(x), 1e-12);
    EXPECT_NEAR(d.cdf(x) + d.survival(x), 1.0, 1e-15);
  }
}

TEST(Distribution, SubModelsReduce) {
  const double x = 0.83;
  const double lambda = 1.4;
  const double g = -std::expm1(-lambda * x);
  EXPECT_NEAR(BgeDistribution(BgeParams::generalized_exponential(lambda, 2.7)).cdf(x), std::pow(g, 2.7), 1e-15);
  EXPECT_NEAR(BgeDistribution(BgeParams::exponential(lambda)).pdf(x), lambda * std::exp(-lambda * x), 1e-15);
  EXPECT_NEAR(BgeDistribution(BgeParams::beta_exponential(1.0, 3.0, lambda)).survival(x),
              std::exp(-3.0 * lambda * x), 1e-15);
  EXPECT_NEAR(BgeDistribution(BgeParams::double_generalized_exponential(2.5, lambda, 0.6)).survival(x),
              std::pow(1.0 - std::pow(g, 0.6), 2.5), 1e-14);
}

TEST(Distribution, OriginLimitsAndDomain) {
  EXPECT_EQ(BgeDistribution({2, 1, 1, 1}).origin_behavior(), bge::OriginBehavior::zero);
  EXPECT_EQ(BgeDistribution({2, 1, 1, 1}).pdf(0.0), 0.0);
  EXPECT_EQ(BgeDistribution({1, 3, 2, 1}).origin_behavior(), bge::OriginBehavior::finite);
  EXPECT_NEAR(BgeDistribution({1, 3, 2, 1}).pdf(0.0), 6.0, 1e-14);
  EXPECT_EQ(BgeDistribution({0.5, 3, 2, 1}).origin_behavior(), bge::OriginBehavior::unbounded);
  EXPECT_TRUE(std::isinf(BgeDistribution({0.5, 3, 2, 1}).pdf(0.0)));
  EXPECT_THROW(BgeDistribution({1, 1, 1, 1}).pdf(-1.0), std::domain_error);
  EXPECT_THROW(BgeDistribution({1, 1, 1, 1}).quantile(0.0), std::domain_error);
  EXPECT_THROW(BgeDistribution({1, 1, 1, 1}).quantile(1.0), std::domain_error);
}

TEST(Distribution, HazardShapes) {
  const BgeDistribution expo(BgeParams::exponential(1.3));
  for (double x : {0.01, 1.0, 10.0, 100.0}) EXPECT_NEAR(expo.hazard(x), 1.3, 1e-12);
  const BgeDistribution increasing({1, 1, 1, 3.0});
  const BgeDistribution decreasing({1, 1, 1, 0.4});
  double prev_inc = 0.0;
  double prev_dec = std::numeric_limits<double>::infinity();
  for (double x = 0.05; x < 20.0; x += 0.25) {
    EXPECT_GT(increasing.hazard(x), prev_inc);
    EXPECT_LT(decreasing.hazard(x), prev_dec);
    prev_inc = increasing.hazard(x);
    prev_dec = decreasing.hazard(x);
  }
  // the hazard tends to bλ in the right tail
  EXPECT_NEAR(BgeDistribution({2.0, 1.5, 0.8, 2.0}).hazard(60.0), 1.2, 1e-6);
}

TEST(Distribution, FarTailStaysFinite) {
  const BgeDistribution d({2, 3, 1, 1});
  EXPECT_GT(d.survival(200.0), 0.0);
  EXPECT_NEAR(d.log_survival(300.0), -900.0 + std::log(4.0), 1e-6);
  EXPECT_NEAR(d.hazard(200.0), 3.0, 1e-9);
}

TEST(Distribution, QuantileRoundTrip) {
  for (const BgeParams& p : {BgeParams(0.4125, 93.4655, 0.92271, 22.6124), BgeParams(3, 0.3, 2, 0.5),
                             BgeParams(0.2, 0.2, 1, 1)}) {
    const BgeDistribution d(p);
    for (double u : {1e-9, 0.01, 0.3, 0.5, 0.9, 0.999999}) {
      EXPECT_NEAR(d.cdf(d.quantile(u)), u, 1e-10 * std::max(u, 1e-3));
    }
  }
}

TEST(Sampler, SeededDeterminism) {
  const BgeDistribution d({1.5, 2.5, 1, 0.7});
  bge::RandomStream r1(99);
  bge::RandomStream r2(99);
  const auto s1 = d.sample(1000, r1);
  const auto s2 = d.sample(1000, r2);
  ASSERT_EQ(s1.size(), 1000u);
  for (std::size_t k = 0; k < s1.size(); ++k) EXPECT_EQ(s1.values()[k], s2.values()[k]);
}

TEST(Sampler, SmallSampleKolmogorovSmirnov) {
  const BgeDistribution d({0.4, 5.0, 2.0, 3.0});
  bge::RandomStream rng(7);
  const auto s = d.sample(5000, rng);
  const double dist =
      bge::testing::ks_distance({s.values().begin(), s.values().end()}, [&](double x) { return d.cdf(x); });
  EXPECT_GT(bge::testing::ks_p_value(dist, s.size()), 0.01);
}

TEST(Sampler, MonteCarloMeanMatchesSeriesMean) {
  const BgeParams p(2.0, 1.5, 1.0, 2.0);
  const BgeDistribution d(p);
  bge::RandomStream rng(2024);
  const auto s = d.sample(200000, rng);
  const auto me = bge::testing::mean_and_error({s.values().begin(), s.values().end()});
  const double mu = bge::series::raw_moment(p, 1).value;
  EXPECT_NEAR(me.mean, mu, 4.0 * me.standard_error);
  EXPECT_NEAR(mu, 1.6132558080048247591, 1e-10);
}
