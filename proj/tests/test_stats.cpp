#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nullwave/errors.hpp"
#include "nullwave/rng.hpp"
#include "nullwave/stats.hpp"

using namespace nullwave;
using stats::ScalePoint;

namespace {

std::vector<double> normals(int n, std::uint64_t seed) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = rng::gaussian(rng::key(seed, k, 0));
  return out;
}

std::vector<ScalePoint> power_law(double exponent, double prefactor, int lo, int hi) {
  std::vector<ScalePoint> pts;
  for (int k = lo; k <= hi; ++k) {
    const double eps = std::ldexp(1.0, -k);
    pts.push_back({eps, prefactor * std::pow(eps, exponent)});
  }
  return pts;
}

}  // namespace

TEST(LpNorm, Examples) {
  EXPECT_DOUBLE_EQ(stats::lp_norm(std::vector<double>{3.0, 4.0}, 2.0), std::sqrt(12.5));
  EXPECT_DOUBLE_EQ(stats::lp_norm(std::vector<double>(7, -2.5), 2.0), 2.5);
  EXPECT_NEAR(stats::lp_norm(std::vector<double>(7, -2.5), 4.0), 2.5, 1e-15);
  EXPECT_THROW(stats::lp_norm(std::vector<double>{}, 2.0), ConfigError);
  EXPECT_THROW(stats::lp_norm(std::vector<double>{1.0}, 1.5), ConfigError);
  EXPECT_THROW(stats::lp_norm(std::vector<double>{1.0}, INFINITY), ConfigError);
}

TEST(LpNorm, GaussianMomentsConverge) {
  const auto x = normals(100000, 17);
  EXPECT_NEAR(stats::lp_norm(x, 2.0), 1.0, 0.02);
  // E|N|^4 = 3
  EXPECT_NEAR(stats::lp_norm(x, 4.0), std::pow(3.0, 0.25), 0.02);
  const auto m = stats::lp_moment(x, 4.0);
  // Var |N|^4 = 105 - 9
  EXPECT_NEAR(m.std_error, std::sqrt(96.0 / 100000), 0.1 * std::sqrt(96.0 / 100000));
}

TEST(LpNorm, ErrorShrinksLikeInverseRootN) {
  // Spread of the estimator over independent batches scales as N^-1/2.
  auto spread = [](int n) {
    double s2 = 0;
    const int batches = 200;
    for (int b = 0; b < batches; ++b) {
      const double e = stats::lp_norm(normals(n, 1000 + b), 2.0) - 1.0;
      s2 += e * e;
    }
    return std::sqrt(s2 / batches);
  };
  const double ratio = spread(400) / spread(6400);
  EXPECT_NEAR(ratio, 4.0, 1.0);
}

TEST(MeanEstimate, Basics) {
  const auto m = stats::estimate_mean(std::vector<double>{1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.std_error, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_EQ(m.count, 4u);
  EXPECT_THROW(stats::estimate_mean(std::vector<double>{}), ConfigError);
}

TEST(PairwiseSum, DependsOnlyOnOrder) {
  const auto x = normals(1001, 3);
  EXPECT_EQ(stats::pairwise_sum(x), stats::pairwise_sum(x));
  double naive = 0;
  for (double v : x) naive += v;
  EXPECT_NEAR(stats::pairwise_sum(x), naive, 1e-12);
  EXPECT_EQ(stats::pairwise_sum(std::vector<double>{}), 0.0);
}

TEST(FitSlope, ExactPowerLaw) {
  const auto fit = stats::fit_slope(power_law(1.5, 1.0, 3, 7));
  EXPECT_NEAR(fit.slope, 1.5, 1e-12);
  EXPECT_NEAR(fit.std_error, 0.0, 1e-12);
  EXPECT_EQ(fit.points, 5u);
}

TEST(FitSlope, PrefactorDoesNotMatter) {
  EXPECT_NEAR(stats::fit_slope(power_law(1.0, 3.0, 2, 6)).slope, 1.0, 1e-12);
}

TEST(FitSlope, RescalingScalesLeavesSlope) {
  auto pts = power_law(0.5, 1.0, 2, 8);
  for (std::size_t k = 0; k < pts.size(); ++k) pts[k].value *= 1 + 0.03 * std::sin(7.0 * k);
  const double before = stats::fit_slope(pts).slope;
  for (auto& p : pts) p.scale *= 37.0;
  EXPECT_NEAR(stats::fit_slope(pts).slope, before, 1e-12);
}

TEST(FitSlope, PerturbedPowerLaw) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto pts = power_law(1.5, 1.0, 3, 7);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      pts[k].value *= 1 + 0.05 * rng::gaussian(rng::key(seed, k, 5));
    }
    EXPECT_NEAR(stats::fit_slope(pts).slope, 1.5, 0.1);
  }
}

TEST(FitSlope, Errors) {
  auto pts = power_law(1.5, 1.0, 3, 7);
  pts[2].value = 0.0;
  EXPECT_THROW(stats::fit_slope(pts), DataError);
  EXPECT_THROW(stats::fit_slope(power_law(1.0, 1.0, 3, 4)), DataError);
  std::vector<ScalePoint> repeated{{0.1, 1}, {0.1, 2}, {0.2, 3}, {0.2, 1}};
  EXPECT_THROW(stats::fit_slope(repeated), DataError);
}

TEST(Bootstrap, IntervalBracketsEstimateAndIsDeterministic) {
  const auto x = normals(2000, 9);
  const auto a = stats::bootstrap_lp_interval(x, 2.0, 1000, 55);
  const auto b = stats::bootstrap_lp_interval(x, 2.0, 1000, 55);
  const double est = stats::lp_norm(x, 2.0);
  EXPECT_EQ(a.lo, b.lo);
  EXPECT_EQ(a.hi, b.hi);
  EXPECT_LT(a.lo, est);
  EXPECT_GT(a.hi, est);
  // Delta method: sd(norm) ~ sqrt(Var X^2 / N) / 2 = sqrt(2 / N) / 2.
  const double half = 0.5 * (a.hi - a.lo);
  EXPECT_NEAR(half, 1.96 * std::sqrt(2.0 / 2000) / 2, 0.25 * half);
}

TEST(Bootstrap, CoverageOfTrueNorm) {
  int covered = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const auto x = normals(300, 500 + t);
    const auto ci = stats::bootstrap_lp_interval(x, 2.0, 1000, t);
    covered += ci.lo <= 1.0 && 1.0 <= ci.hi;
  }
  EXPECT_GE(covered, 85);
}

TEST(NormalQuantile, KnownValues) {
  EXPECT_NEAR(stats::normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(stats::normal_quantile(0.995), 2.5758293035489, 1e-12);
  EXPECT_NEAR(stats::normal_quantile(0.5), 0.0, 1e-15);
}
