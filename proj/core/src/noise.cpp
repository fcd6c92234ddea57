#include "nullwave/noise.hpp"

#include <cmath>
#include <sstream>

#include <boost/random/normal_distribution.hpp>

#include "nullwave/errors.hpp"
#include "nullwave/rng.hpp"

namespace nullwave {

namespace {

// Stream tags keep the lattice and the nested-square sampler apart.
constexpr std::uint64_t kLatticeStream = 0x6c61747469636501ULL;
constexpr std::uint64_t kNestedStream = 0x6e65737465640002ULL;

std::int64_t to_units(double value, double quantum) {
  return static_cast<std::int64_t>(std::llround(value / quantum));
}

}  // namespace

double noise_quantum(double h) { return std::ldexp(1.0, std::ilogb(h) - 24); }

NoiseField::NoiseField(GridSpec grid, std::uint64_t seed, double quantum,
                       std::vector<std::int64_t> units)
    : grid_(grid), seed_(seed), quantum_(quantum), units_(std::move(units)) {
  const int n = grid_.n;
  prefix_.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  // Row-major build: prefix(i+1, j+1) = prefix(i+1, j) + sum of row j up to i.
  for (int j = 0; j < n; ++j) {
    std::int64_t running = 0;
    const auto row = row_units(j);
    const std::size_t below = static_cast<std::size_t>(j) * (n + 1);
    const std::size_t here = below + (n + 1);
    for (int i = 0; i < n; ++i) {
      running += row[i];
      prefix_[here + i + 1] = prefix_[below + i + 1] + running;
    }
  }
}

NoiseField NoiseField::sample(const GridSpec& grid, std::uint64_t seed) {
  grid.validate();
  const int n = grid.n;
  const double quantum = noise_quantum(grid.h);
  const double scale = grid.h / quantum;
  std::vector<std::int64_t> units(static_cast<std::size_t>(n) * n);
  const std::uint64_t stream = rng::combine(seed, kLatticeStream);
  boost::random::normal_distribution<double> normal;
  for (int j = 0; j < n; ++j) {
    std::int64_t* row = units.data() + static_cast<std::size_t>(j) * n;
    // Row j is one counter stream, so cell (i, j) depends on (seed, i, j) only,
    // whatever n is.
    rng::SplitMix64 bits(rng::combine(stream, static_cast<std::uint64_t>(j)));
    normal.reset();
    for (int i = 0; i < n; ++i) row[i] = std::lrint(normal(bits) * scale);
  }
  return NoiseField(grid, seed, quantum, std::move(units));
}

NoiseField NoiseField::from_values(const GridSpec& grid, std::span<const double> values,
                                   std::uint64_t seed) {
  grid.validate();
  const auto cells = static_cast<std::size_t>(grid.n) * grid.n;
  if (values.size() != cells) {
    throw ConfigError("noise: expected " + std::to_string(cells) + " increments, got " +
                      std::to_string(values.size()));
  }
  const double quantum = noise_quantum(grid.h);
  std::vector<std::int64_t> units(cells);
  for (std::size_t k = 0; k < cells; ++k) units[k] = to_units(values[k], quantum);
  return NoiseField(grid, seed, quantum, std::move(units));
}

double NoiseField::cumulative(int i, int j) const {
  if (i < 0 || j < 0 || i > grid_.n || j > grid_.n) {
    throw RangeError("noise: prefix index (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside 0.." + std::to_string(grid_.n));
  }
  return static_cast<double>(cumulative_units(i, j)) * quantum_;
}

double NoiseField::rectangle_integral(const CellRect& r) const {
  if (r.empty()) return 0.0;
  const int n = grid_.n;
  if (r.i0 < 0 || r.j0 < 0 || r.i1 > n || r.j1 > n) {
    std::ostringstream os;
    os << "noise: cell rectangle [" << r.i0 << ", " << r.i1 << ") x [" << r.j0 << ", " << r.j1
       << ") outside the " << n << " x " << n << " grid";
    throw RangeError(os.str());
  }
  const std::int64_t units = cumulative_units(r.i1, r.j1) - cumulative_units(r.i0, r.j1) -
                             cumulative_units(r.i1, r.j0) + cumulative_units(r.i0, r.j0);
  return static_cast<double>(units) * quantum_;
}

double NoiseField::strip_integral(int column, int row_begin, int row_end,
                                  std::span<const double> weights) const {
  const int n = grid_.n;
  if (column < 0 || column >= n || row_begin < 0 || row_end > n || row_end < row_begin) {
    std::ostringstream os;
    os << "noise: strip column " << column << " rows [" << row_begin << ", " << row_end
       << ") outside the " << n << " x " << n << " grid";
    throw RangeError(os.str());
  }
  if (weights.size() != static_cast<std::size_t>(row_end - row_begin)) {
    throw RangeError("noise: strip weights length does not match the row range");
  }
  double sum = 0.0;
  for (int l = row_begin; l < row_end; ++l) {
    const double w = weights[static_cast<std::size_t>(l - row_begin)];
    if (!std::isfinite(w)) throw DataError("noise: strip weight is not finite");
    sum += w * increment(column, l);
  }
  return sum;
}

std::vector<double> sample_nested_squares(double h, std::span<const int> sides,
                                          std::uint64_t seed) {
  if (!(h > 0.0)) throw ConfigError("nested squares: h must be positive");
  for (std::size_t k = 0; k < sides.size(); ++k) {
    if (sides[k] < 1) throw ConfigError("nested squares: sides must be >= 1 cell");
    if (k > 0 && sides[k] > sides[k - 1]) {
      throw ConfigError("nested squares: sides must be non-increasing");
    }
  }
  const std::uint64_t stream = rng::combine(seed, kNestedStream);
  std::vector<double> out(sides.size());
  double inner = 0.0;
  for (std::size_t k = sides.size(); k-- > 0;) {
    const double side = sides[k];
    const double next = (k + 1 < sides.size()) ? sides[k + 1] : 0.0;
    const double cells = side * side - next * next;
    inner += std::sqrt(cells) * h * rng::gaussian(rng::key(stream, k, 0));
    out[k] = inner;
  }
  return out;
}

}  // namespace nullwave
