#include <gtest/gtest.h>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <random>

#include "coocstat/stat_tests.hpp"

using namespace coocstat;
using namespace coocstat::stats;

namespace {

// Exact binomial coefficients as doubles (exact for n <= 60).
double choose(unsigned n, unsigned k) {
  double c = 1.0;
  for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Two-sided minimum-likelihood p-value with exact integer comparison of
// C(n, i) against C(n, k) (p0 = 1/2 makes every pmf a multiple of 2^-n).
double binom_oracle(unsigned k, unsigned n) {
  const double ck = choose(n, k);
  double sum = 0.0;
  for (unsigned i = 0; i <= n; ++i)
    if (choose(n, i) <= ck) sum += choose(n, i);
  return std::min(1.0, sum / std::ldexp(1.0, static_cast<int>(n)));
}

double brute_effect(const std::vector<double>& x, const std::vector<double>& y) {
  double wins = 0.0;
  for (double a : x)
    for (double b : y) wins += a < b ? 1.0 : (a == b ? 0.5 : 0.0);
  return wins / static_cast<double>(x.size() * y.size());
}

}  // namespace

TEST(Chi2, SpecValues) {
  EXPECT_NEAR(chi2_sf(3.841458820694124, 1), 0.05, 1e-9);
  EXPECT_NEAR(chi2_sf(6.634896601021214, 1), 0.01, 1e-9);
  EXPECT_DOUBLE_EQ(chi2_sf(0.0, 1), 1.0);
  EXPECT_THROW(chi2_sf(-1.0, 1), ArgumentError);
  EXPECT_THROW(chi2_sf(1.0, 0), ArgumentError);
}

TEST(Chi2, MatchesBoost) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ux(0.0, 200.0);
  for (double df : {1.0, 2.0, 3.5, 10.0, 57.0}) {
    boost::math::chi_squared_distribution<double> d(df);
    for (int i = 0; i < 400; ++i) {
      const double x = ux(rng);
      const double expect = boost::math::cdf(boost::math::complement(d, x));
      EXPECT_NEAR(chi2_sf(x, df), expect, 1e-12 + 1e-9 * expect) << "x=" << x << " df=" << df;
    }
  }
}

TEST(StudentT, MatchesBoost) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ut(-30.0, 30.0);
  for (double df : {1.0, 1.7, 4.0, 12.3, 150.0, 4000.0}) {
    boost::math::students_t_distribution<double> d(df);
    for (int i = 0; i < 400; ++i) {
      const double t = ut(rng);
      const double expect = boost::math::cdf(boost::math::complement(d, t));
      EXPECT_NEAR(t_sf(t, df), expect, 1e-12 + 1e-9 * expect) << "t=" << t << " df=" << df;
    }
  }
  EXPECT_DOUBLE_EQ(t_sf(0.0, 5.0), 0.5);
}

TEST(SpecialFunctions, MatchBoost) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(0.05, 60.0), ux(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double a = ua(rng), b = ua(rng), x = ux(rng);
    EXPECT_NEAR(beta_inc(a, b, x), boost::math::ibeta(a, b, x), 1e-11);
    const double g = ux(rng) * 3 * a;
    EXPECT_NEAR(gamma_q(a, g), boost::math::gamma_q(a, g), 1e-11);
  }
}

TEST(Binomial, SpecValues) {
  EXPECT_NEAR(binom_test_two_sided(12, 13).p_value, 0.003418, 5e-7);
  EXPECT_NEAR(binom_test_two_sided(4, 4).p_value, 0.125, 1e-15);
  EXPECT_DOUBLE_EQ(binom_test_two_sided(5, 10).p_value, 1.0);
  EXPECT_THROW(binom_test_two_sided(0, 0), ArgumentError);
  EXPECT_THROW(binom_test_two_sided(3, 2), ArgumentError);
}

TEST(Binomial, MatchesExactEnumeration) {
  for (unsigned n = 1; n <= 40; ++n)
    for (unsigned k = 0; k <= n; ++k)
      EXPECT_NEAR(binom_test_two_sided(k, n).p_value, binom_oracle(k, n), 1e-12) << k << "/" << n;
}

TEST(Binomial, SymmetricAtHalf) {
  for (unsigned n = 1; n <= 200; n += 7)
    for (unsigned k = 0; k <= n; ++k)
      EXPECT_NEAR(binom_test_two_sided(k, n).p_value, binom_test_two_sided(n - k, n).p_value, 1e-12);
}

TEST(Binomial, NonHalfNullMatchesBoostPmf) {
  // Minimum-likelihood p-value from Boost's pmf.
  for (double p0 : {0.1, 0.3, 0.77}) {
    boost::math::binomial_distribution<double> d(30, p0);
    for (unsigned k = 0; k <= 30; ++k) {
      const double pk = boost::math::pdf(d, k);
      double expect = 0.0;
      for (unsigned i = 0; i <= 30; ++i)
        if (boost::math::pdf(d, i) <= pk * (1 + 1e-7)) expect += boost::math::pdf(d, i);
      EXPECT_NEAR(binom_test_two_sided(k, 30, p0).p_value, std::min(1.0, expect), 1e-12);
    }
  }
}

TEST(Midranks, SpecValues) {
  EXPECT_EQ(midranks(std::vector<double>{10, 20, 30}), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(midranks(std::vector<double>{5, 5, 9}), (std::vector<double>{1.5, 1.5, 3}));
  EXPECT_EQ(midranks(std::vector<double>{7, 7, 7, 7}), (std::vector<double>{2.5, 2.5, 2.5, 2.5}));
  EXPECT_EQ(midranks(std::vector<double>{3, 1, 2, 1}), (std::vector<double>{4, 1.5, 3, 1.5}));
}

TEST(Midranks, SumIsTriangular) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(1 + rng() % 50);
    for (auto& x : v) x = static_cast<double>(rng() % 10);
    const auto r = midranks(v);
    const double m = static_cast<double>(v.size());
    EXPECT_DOUBLE_EQ(std::accumulate(r.begin(), r.end(), 0.0), m * (m + 1) / 2);
  }
}

TEST(BrunnerMunzel, SpecValues) {
  const std::vector<double> a{1, 2, 2, 5}, b{5, 2, 1, 2};
  const auto same = brunner_munzel(a, b);
  EXPECT_DOUBLE_EQ(same.effect, 0.5);
  EXPECT_DOUBLE_EQ(same.statistic, 0.0);
  EXPECT_DOUBLE_EQ(same.p_value, 1.0);

  EXPECT_DOUBLE_EQ(brunner_munzel(std::vector<double>{1, 3}, std::vector<double>{2, 4}).effect, 0.75);

  const auto sep = brunner_munzel(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5, 6});
  EXPECT_DOUBLE_EQ(sep.effect, 1.0);
  EXPECT_TRUE(sep.degenerate);
  EXPECT_DOUBLE_EQ(sep.p_value, 0.0);

  EXPECT_THROW(brunner_munzel(std::vector<double>{1}, std::vector<double>{1, 2}), ArgumentError);
}

TEST(BrunnerMunzel, AllTiedIsNotSignificant) {
  const auto r = brunner_munzel(std::vector<double>{3, 3, 3}, std::vector<double>{3, 3});
  EXPECT_FALSE(r.degenerate);
  EXPECT_DOUBLE_EQ(r.effect, 0.5);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0);
}

// Reference values from scipy.stats.brunnermunzel (two-sided, t distribution).
TEST(BrunnerMunzel, ReferenceValues) {
  const std::vector<double> x{1, 2, 1, 1, 1, 1, 1, 1, 1, 1, 2, 4, 1, 1};
  const std::vector<double> y{3, 3, 4, 3, 1, 2, 3, 1, 1, 5, 4};
  const auto r = brunner_munzel(x, y);
  EXPECT_NEAR(r.statistic, 3.1374674823029505, 1e-12);
  EXPECT_NEAR(r.p_value, 0.0057862086661514675, 1e-12);
  EXPECT_NEAR(r.df, 17.682841979481548, 1e-9);
}

TEST(BrunnerMunzel, EffectEqualsPairCounting) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> x(2 + rng() % 7), y(2 + rng() % 7);
    for (auto& v : x) v = static_cast<double>(rng() % 6);
    for (auto& v : y) v = static_cast<double>(rng() % 6);
    const auto xy = brunner_munzel(x, y), yx = brunner_munzel(y, x);
    EXPECT_EQ(xy.effect, brute_effect(x, y));
    EXPECT_NEAR(xy.effect + yx.effect, 1.0, 1e-12);
    if (std::isinf(xy.statistic)) {
      EXPECT_EQ(xy.statistic, -yx.statistic);
    } else {
      EXPECT_NEAR(xy.statistic, -yx.statistic, 1e-12 * (1 + std::fabs(xy.statistic)));
    }
    EXPECT_NEAR(xy.p_value, yx.p_value, 1e-12);
  }
}

TEST(BrunnerMunzel, NullCalibration) {
  // Equal continuous distributions: rejection rate near alpha.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  int reject = 0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> x(50), y(60);
    for (auto& v : x) v = nd(rng);
    for (auto& v : y) v = 3.0 * nd(rng);  // unequal variances, same median
    if (brunner_munzel(x, y).p_value < 0.05) ++reject;
  }
  const double rate = static_cast<double>(reject) / trials;
  EXPECT_GT(rate, 0.04);
  EXPECT_LT(rate, 0.06);
}
