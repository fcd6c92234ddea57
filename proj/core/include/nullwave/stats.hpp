#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace nullwave::stats {

/// Fixed-shape pairwise summation; the result depends only on the order of `values`.
double pairwise_sum(std::span<const double> values) noexcept;

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

/// Sample mean and its standard error (sample standard deviation / sqrt(N)).
/// Throws ConfigError on an empty sample.
MeanEstimate estimate_mean(std::span<const double> values);

/// Empirical E|X|^p with standard error.
MeanEstimate lp_moment(std::span<const double> values, double p);

/// (mean |x|^p)^(1/p). Throws ConfigError for an empty sample or p outside [2, inf).
double lp_norm(std::span<const double> values, double p);

struct ScalePoint {
  double scale = 0.0;
  double value = 0.0;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double std_error = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares of log(value) on log(scale); standard error from the
/// residual variance. Throws DataError unless there are >= 3 distinct positive
/// scales and every value is positive.
SlopeFit fit_slope(std::span<const ScalePoint> points);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Percentile bootstrap interval of lp_norm over paths. Deterministic in `seed`.
Interval bootstrap_lp_interval(std::span<const double> values, double p, int resamples,
                               std::uint64_t seed, double level = 0.95);

/// Standard normal quantile.
double normal_quantile(double probability);

}  // namespace nullwave::stats
