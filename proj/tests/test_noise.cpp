#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nullwave/errors.hpp"
#include "nullwave/noise.hpp"
#include "nullwave/rng.hpp"

using namespace nullwave;

namespace {

GridSpec grid(int n, double h) { return {{0.0, 0.0}, n, h}; }

// Direct double loop over cells, the oracle for every prefix-table answer.
double direct_sum(const NoiseField& w, CellRect r) {
  double s = 0.0;
  for (int j = r.j0; j < r.j1; ++j)
    for (int i = r.i0; i < r.i1; ++i) s += w.increment(i, j);
  return s;
}

}  // namespace

TEST(Noise, InvalidGridIsConfigError) {
  EXPECT_THROW(NoiseField::sample(grid(1, 0.1), 1), ConfigError);
  EXPECT_THROW(NoiseField::sample(grid(4, 0.0), 1), ConfigError);
  EXPECT_THROW(NoiseField::sample(grid(4, -1.0), 1), ConfigError);
  EXPECT_THROW(NoiseField::sample(grid(4, std::nan("")), 1), ConfigError);
}

TEST(Noise, SameSeedIsBitIdentical) {
  const auto a = NoiseField::sample(grid(33, 0.05), 42);
  const auto b = NoiseField::sample(grid(33, 0.05), 42);
  for (int j = 0; j < 33; ++j)
    for (int i = 0; i < 33; ++i) ASSERT_EQ(a.increment(i, j), b.increment(i, j));
  const auto c = NoiseField::sample(grid(33, 0.05), 43);
  EXPECT_NE(a.increment(3, 4), c.increment(3, 4));
}

TEST(Noise, CellDependsOnlyOnSeedAndIndex) {
  // A larger grid with the same step reproduces the smaller one's cells.
  const auto small = NoiseField::sample(grid(10, 0.1), 9);
  const auto large = NoiseField::sample(grid(25, 0.1), 9);
  for (int j = 0; j < 10; ++j)
    for (int i = 0; i < 10; ++i) ASSERT_EQ(small.increment(i, j), large.increment(i, j));
}

TEST(Noise, EmptyRectangleIsZero) {
  const auto w = NoiseField::sample(grid(8, 0.1), 1);
  EXPECT_EQ(w.rectangle_integral({3, 3, 0, 8}), 0.0);
  EXPECT_EQ(w.rectangle_integral({0, 8, 5, 5}), 0.0);
}

TEST(Noise, WholeGridEqualsCumulative) {
  const auto w = NoiseField::sample(grid(12, 0.1), 2);
  EXPECT_EQ(w.rectangle_integral({0, 12, 0, 12}), w.cumulative(12, 12));
  EXPECT_EQ(w.cumulative(0, 5), 0.0);
}

TEST(Noise, PrefixMatchesDirectSummation) {
  const auto w = NoiseField::sample(grid(16, 0.1), 3);
  for (int j = 0; j <= 16; j += 3)
    for (int i = 0; i <= 16; i += 5) {
      EXPECT_EQ(w.cumulative(i, j), direct_sum(w, {0, i, 0, j}));
    }
  EXPECT_EQ(w.rectangle_integral({2, 11, 4, 9}), direct_sum(w, {2, 11, 4, 9}));
}

TEST(Noise, AdditivityIsExact) {
  const auto w = NoiseField::sample(grid(20, 0.0375), 4);
  const CellRect whole{1, 19, 2, 17};
  for (int cut = 2; cut < 19; ++cut) {
    const double left = w.rectangle_integral({1, cut, 2, 17});
    const double right = w.rectangle_integral({cut, 19, 2, 17});
    ASSERT_EQ(left + right, w.rectangle_integral(whole));
  }
  const double quads = w.rectangle_integral({1, 7, 2, 9}) + w.rectangle_integral({7, 19, 2, 9}) +
                       w.rectangle_integral({1, 7, 9, 17}) + w.rectangle_integral({7, 19, 9, 17});
  EXPECT_EQ(quads, w.rectangle_integral(whole));
}

TEST(Noise, RectangleOutOfBoundsIsRangeError) {
  const auto w = NoiseField::sample(grid(8, 0.1), 1);
  EXPECT_THROW(w.rectangle_integral({-1, 3, 0, 2}), RangeError);
  EXPECT_THROW(w.rectangle_integral({0, 9, 0, 2}), RangeError);
  EXPECT_THROW(w.cumulative(9, 0), RangeError);
}

TEST(Noise, StripIntegral) {
  const auto w = NoiseField::sample(grid(10, 0.1), 5);
  const std::vector<double> zeros(6, 0.0), ones(6, 1.0);
  EXPECT_EQ(w.strip_integral(3, 2, 8, zeros), 0.0);
  EXPECT_EQ(w.strip_integral(3, 2, 8, ones), w.rectangle_integral({3, 4, 2, 8}));

  std::vector<double> weights(6);
  double direct = 0.0;
  for (int l = 2; l < 8; ++l) {
    weights[l - 2] = rng::gaussian(rng::key(11, l, 0));
    direct += weights[l - 2] * w.increment(3, l);
  }
  EXPECT_NEAR(w.strip_integral(3, 2, 8, weights), direct, 1e-12 * std::abs(direct));

  EXPECT_THROW(w.strip_integral(10, 0, 2, std::vector<double>(2)), RangeError);
  EXPECT_THROW(w.strip_integral(1, 0, 11, std::vector<double>(11)), RangeError);
  EXPECT_THROW(w.strip_integral(1, 0, 3, std::vector<double>(2)), RangeError);
  EXPECT_THROW(w.strip_integral(1, 0, 2, std::vector<double>{1.0, std::nan("")}), DataError);
}

TEST(Noise, FromValuesRoundsToQuantum) {
  const GridSpec g = grid(2, 0.5);
  const std::vector<double> v{0.25, -0.5, 0.125, 1.0};
  const auto w = NoiseField::from_values(g, v, 7);
  EXPECT_EQ(w.increment(0, 0), 0.25);
  EXPECT_EQ(w.increment(1, 0), -0.5);
  EXPECT_EQ(w.increment(0, 1), 0.125);
  EXPECT_EQ(w.seed(), 7u);
  EXPECT_THROW(NoiseField::from_values(g, std::vector<double>(3), 0), ConfigError);
}

TEST(Noise, UnitCellHasUnitVariance) {
  // h = 1: each increment is N(0, 1), the area of a unit cell.
  const int n = 64, seeds = 40;
  double s2 = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const auto w = NoiseField::sample(grid(n, 1.0), s);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) s2 += w.increment(i, j) * w.increment(i, j);
  }
  const double count = static_cast<double>(seeds) * n * n;
  EXPECT_NEAR(s2 / count, 1.0, 4 * std::sqrt(2.0 / count));
}

TEST(Noise, IsometryOnAlignedRectangles) {
  // 0.3 x 0.2 rectangle on an h = 0.1 lattice: Var = 0.06. The overlapping pair
  // shares a 0.1 x 0.2 block, so the covariance is 0.02.
  const GridSpec g = grid(4, 0.1);
  const int N = 100000;
  std::vector<double> a(N), b(N);
  for (int k = 0; k < N; ++k) {
    const auto w = NoiseField::sample(g, rng::path_seed(77, k));
    a[k] = w.rectangle_integral({0, 3, 1, 3});
    b[k] = w.rectangle_integral({2, 4, 1, 3});
  }
  double saa = 0, sab = 0, saa2 = 0, sab2 = 0;
  for (int k = 0; k < N; ++k) {
    saa += a[k] * a[k];
    sab += a[k] * b[k];
    saa2 += a[k] * a[k] * a[k] * a[k];
    sab2 += a[k] * b[k] * a[k] * b[k];
  }
  const double var = saa / N, cov = sab / N;
  const double se_var = std::sqrt((saa2 / N - var * var) / N);
  const double se_cov = std::sqrt((sab2 / N - cov * cov) / N);
  EXPECT_NEAR(var, 0.06, 3 * se_var);
  EXPECT_NEAR(cov, 0.02, 4 * se_cov);
}

TEST(Noise, QuantumIsPowerOfTwoBelowStep) {
  for (double h : {1.0, 0.1, 0.0125, 0x1.0p-12}) {
    const double q = noise_quantum(h);
    int e = 0;
    EXPECT_EQ(std::frexp(q, &e), 0.5);
    EXPECT_LT(q, h * 1e-6);
  }
}

TEST(NestedSquares, ValidatesSides) {
  EXPECT_THROW(sample_nested_squares(0.1, std::vector<int>{2, 3}, 1), ConfigError);
  EXPECT_THROW(sample_nested_squares(0.1, std::vector<int>{2, 0}, 1), ConfigError);
  EXPECT_THROW(sample_nested_squares(0.0, std::vector<int>{2}, 1), ConfigError);
}

TEST(NestedSquares, CovarianceMatchesSharedArea) {
  // Squares of sides 4 and 2 cells (h = 0.5): variances 4 and 1, covariance 1.
  const std::vector<int> sides{4, 2};
  const int N = 100000;
  double s00 = 0, s01 = 0, s11 = 0;
  for (int k = 0; k < N; ++k) {
    const auto x = sample_nested_squares(0.5, sides, rng::path_seed(3, k));
    s00 += x[0] * x[0];
    s01 += x[0] * x[1];
    s11 += x[1] * x[1];
  }
  EXPECT_NEAR(s00 / N, 4.0, 4 * 4.0 * std::sqrt(2.0 / N));
  EXPECT_NEAR(s11 / N, 1.0, 4 * std::sqrt(2.0 / N));
  // Var(XY) = 4*1 + 1 = 5 for this pair.
  EXPECT_NEAR(s01 / N, 1.0, 4 * std::sqrt(5.0 / N));
}
