#include "nullwave/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "nullwave/errors.hpp"
#include "nullwave/rng.hpp"

namespace nullwave::stats {

double pairwise_sum(std::span<const double> values) noexcept {
  constexpr std::size_t kBlock = 16;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MeanEstimate estimate_mean(std::span<const double> values) {
  if (values.empty()) throw ConfigError("statistics: empty sample");
  const double n = static_cast<double>(values.size());
  const double mean = pairwise_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) sq[k] = (values[k] - mean) * (values[k] - mean);
  const double var = values.size() > 1 ? pairwise_sum(sq) / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n), values.size()};
}

namespace {

void check_p(double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    throw ConfigError("statistics: p must be finite and >= 2 (got " + std::to_string(p) + ")");
  }
}

std::vector<double> abs_powers(std::span<const double> values, double p) {
  std::vector<double> out(values.size());
  if (p == 2.0) {
    for (std::size_t k = 0; k < values.size(); ++k) out[k] = values[k] * values[k];
  } else {
    for (std::size_t k = 0; k < values.size(); ++k) out[k] = std::pow(std::abs(values[k]), p);
  }
  return out;
}

}  // namespace

MeanEstimate lp_moment(std::span<const double> values, double p) {
  check_p(p);
  if (values.empty()) throw ConfigError("statistics: empty sample");
  const auto powers = abs_powers(values, p);
  return estimate_mean(powers);
}

double lp_norm(std::span<const double> values, double p) {
  return std::pow(lp_moment(values, p).mean, 1.0 / p);
}

SlopeFit fit_slope(std::span<const ScalePoint> points) {
  std::set<double> distinct;
  for (const auto& pt : points) {
    if (!(pt.scale > 0.0) || !std::isfinite(pt.scale)) {
      throw DataError("fit_slope: scales must be positive and finite");
    }
    if (!(pt.value > 0.0) || !std::isfinite(pt.value)) {
      throw DataError("fit_slope: nonpositive norm " + std::to_string(pt.value) + " at scale " +
                      std::to_string(pt.scale));
    }
    distinct.insert(pt.scale);
  }
  if (distinct.size() < 3) throw DataError("fit_slope: need at least 3 distinct scales");

  const double k = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& pt : points) {
    mx += std::log(pt.scale);
    my += std::log(pt.value);
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& pt : points) {
    const double dx = std::log(pt.scale) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(pt.value) - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = points.size();
  double rss = 0.0;
  for (const auto& pt : points) {
    const double r = std::log(pt.value) - (fit.intercept + fit.slope * std::log(pt.scale));
    rss += r * r;
  }
  fit.std_error = std::sqrt(rss / (k - 2.0) / sxx);
  return fit;
}

Interval bootstrap_lp_interval(std::span<const double> values, double p, int resamples,
                               std::uint64_t seed, double level) {
  check_p(p);
  if (values.empty()) throw ConfigError("statistics: empty sample");
  if (resamples < 1) throw ConfigError("bootstrap: resamples must be >= 1");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("bootstrap: level must be in (0, 1)");
  const auto powers = abs_powers(values, p);
  const std::uint64_t n = powers.size();
  std::vector<double> norms(static_cast<std::size_t>(resamples));
  for (int b = 0; b < resamples; ++b) {
    const std::uint64_t stream = rng::combine(seed, static_cast<std::uint64_t>(b));
    double sum = 0.0;
    for (std::uint64_t k = 0; k < n; ++k) {
      sum += powers[rng::below(rng::combine(stream, k), n)];
    }
    norms[static_cast<std::size_t>(b)] = std::pow(sum / static_cast<double>(n), 1.0 / p);
  }
  std::sort(norms.begin(), norms.end());
  const double alpha = 1.0 - level;
  const auto last = static_cast<double>(resamples - 1);
  const auto lo = static_cast<std::size_t>(std::floor(alpha / 2.0 * last));
  const auto hi = static_cast<std::size_t>(std::ceil((1.0 - alpha / 2.0) * last));
  return {norms[lo], norms[std::min(hi, norms.size() - 1)]};
}

double normal_quantile(double probability) {
  if (!(probability > 0.0 && probability < 1.0)) {
    throw ConfigError("normal_quantile: probability must be in (0, 1)");
  }
  return boost::math::quantile(boost::math::normal_distribution<double>(), probability);
}

}  // namespace nullwave::stats
