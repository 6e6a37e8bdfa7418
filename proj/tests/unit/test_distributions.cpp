#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "cojump/distributions.hpp"
#include "cojump/random.hpp"

using namespace cojump;

namespace {

// Independent oracle: bisection on a monotone CDF.
template <class F>
double bisect(F cdf, double target, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(IncompleteGamma, MatchesBoost) {
  for (double a : {0.5, 1.0, 2.5, 5.0, 17.0, 60.0}) {
    for (double x : {1e-6, 0.1, 0.9, 2.0, 5.5, 20.0, 80.0}) {
      EXPECT_NEAR(gamma_p(a, x), boost::math::gamma_p(a, x), 1e-13) << a << " " << x;
      EXPECT_NEAR(gamma_q(a, x), boost::math::gamma_q(a, x), 1e-13) << a << " " << x;
    }
  }
  EXPECT_EQ(gamma_p(2.0, 0.0), 0.0);
  EXPECT_EQ(gamma_q(2.0, 0.0), 1.0);
}

TEST(Chi2, Basics) {
  for (int k = 1; k <= 10; ++k) EXPECT_EQ(chi2_cdf(0.0, k), 0.0);
  EXPECT_NEAR(chi2_cdf(3.841458820694124, 1), 0.95, 1e-12);
  EXPECT_NEAR(chi2_sf(3.841458820694124, 1) + chi2_cdf(3.841458820694124, 1), 1.0, 1e-15);
  EXPECT_THROW(chi2_cdf(1.0, 0.0), std::invalid_argument);
}

TEST(Chi2, UpperQuantileKnownValue) {
  EXPECT_NEAR(chi2_upper_quantile(0.05, 1), 3.841459, 1e-5);
  const double oracle = bisect([](double x) { return boost::math::gamma_p(0.5, x / 2); }, 0.95,
                               0.0, 100.0);
  EXPECT_NEAR(chi2_upper_quantile(0.05, 1), oracle, 1e-10);
  EXPECT_THROW(chi2_upper_quantile(0.0, 1), std::invalid_argument);
  EXPECT_THROW(chi2_upper_quantile(1.0, 1), std::invalid_argument);
}

// Squared standard normals exceed the 95% quantile about 5% of the time.
TEST(Chi2, UpperQuantileBySimulation) {
  RandomStream rng(5, 0);
  const double q = chi2_upper_quantile(0.05, 1);
  const int reps = 200000;
  int above = 0;
  for (int i = 0; i < reps; ++i) {
    const double z = rng.normal();
    above += z * z > q ? 1 : 0;
  }
  const double rate = static_cast<double>(above) / reps;
  EXPECT_NEAR(rate, 0.05, 4.0 * std::sqrt(0.05 * 0.95 / reps));
}

TEST(Chi2, QuantileCdfIdentity) {
  for (int dof = 1; dof <= 10; ++dof) {
    const boost::math::chi_squared_distribution<double> law(dof);
    for (int i = 1; i <= 99; ++i) {
      const double p = i / 100.0;
      const double q = chi2_upper_quantile(p, dof);
      ASSERT_NEAR(chi2_sf(q, dof), p, 1e-8) << dof << " " << p;
      ASSERT_NEAR(q, boost::math::quantile(boost::math::complement(law, p)), 1e-8 * std::max(1.0, q));
    }
  }
}

TEST(Normal, Basics) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-15);
  EXPECT_NEAR(normal_sf(-1.0), normal_cdf(1.0), 1e-15);
  EXPECT_NEAR(normal_quantile(0.975), 1.959964, 1e-5);
  EXPECT_THROW(normal_quantile(0.0), std::invalid_argument);
  EXPECT_THROW(normal_quantile(1.0), std::invalid_argument);
}

TEST(Normal, QuantileAgainstBisectionAndBoost) {
  const boost::math::normal_distribution<double> law;
  for (double p : {1e-12, 1e-8, 1e-4, 0.01, 0.025, 0.2, 0.5, 0.7, 0.975, 0.999, 1 - 1e-9}) {
    // Bisect on the tail that does not cancel.
    const double oracle = p < 0.5 ? bisect([](double x) { return normal_cdf(x); }, p, -40.0, 40.0)
                                  : -bisect([](double x) { return normal_cdf(x); }, 1.0 - p, -40.0, 40.0);
    EXPECT_NEAR(normal_quantile(p), oracle, 1e-9 * std::max(1.0, std::abs(oracle))) << p;
    EXPECT_NEAR(normal_quantile(p), boost::math::quantile(law, p), 1e-12 * std::max(1.0, std::abs(oracle)))
        << p;
  }
  for (int i = 1; i <= 99; ++i) {
    const double p = i / 100.0;
    ASSERT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-8);
  }
}
