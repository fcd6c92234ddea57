#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nullwave/grid.hpp"

namespace nullwave {

/// One realization of lattice white noise: an n x n array of independent
/// N(0, h^2) cell increments plus an exact prefix-sum table.
///
/// Increments are stored as integer multiples of a power-of-two quantum
/// (about h * 2^-24), so every rectangle sum is computed in exact integer
/// arithmetic and additivity over disjoint rectangles holds bit for bit.
/// Cell (i, j) of a field sampled with `seed` is a pure function of
/// (seed, i, j).
class NoiseField {
 public:
  /// Throws ConfigError for an invalid grid.
  static NoiseField sample(const GridSpec& grid, std::uint64_t seed);

  /// Builds a field from explicit increment values, rounded to the quantum.
  /// `values` is indexed [j * n + i].
  static NoiseField from_values(const GridSpec& grid, std::span<const double> values,
                                std::uint64_t seed = 0);

  const GridSpec& grid() const noexcept { return grid_; }
  std::uint64_t seed() const noexcept { return seed_; }
  int size() const noexcept { return grid_.n; }
  double quantum() const noexcept { return quantum_; }

  /// Increment of cell (i, j) = [x1(i), x1(i+1)] x [x2(j), x2(j+1)].
  double increment(int i, int j) const noexcept {
    return static_cast<double>(units_[static_cast<std::size_t>(j) * grid_.n + i]) * quantum_;
  }

  /// Raw quantized units of the cells (0..n-1, j); contiguous in i.
  std::span<const std::int64_t> row_units(int j) const noexcept {
    return {units_.data() + static_cast<std::size_t>(j) * grid_.n,
            static_cast<std::size_t>(grid_.n)};
  }

  /// Sum of increments over cells with i' < i and j' < j.
  double cumulative(int i, int j) const;

  /// Sum of the increments over a block of cells, by four-corner inclusion-exclusion
  /// of the prefix table. Empty rectangles give 0. Throws RangeError when the
  /// block leaves the grid.
  double rectangle_integral(const CellRect& rect) const;

  /// sum_l weights[l - row_begin] * increment(column, l) for l in [row_begin, row_end).
  double strip_integral(int column, int row_begin, int row_end,
                        std::span<const double> weights) const;

 private:
  NoiseField(GridSpec grid, std::uint64_t seed, double quantum, std::vector<std::int64_t> units);
  std::int64_t cumulative_units(int i, int j) const noexcept {
    return prefix_[static_cast<std::size_t>(j) * (grid_.n + 1) + i];
  }

  GridSpec grid_;
  std::uint64_t seed_ = 0;
  double quantum_ = 0.0;
  std::vector<std::int64_t> units_;   // [j * n + i]
  std::vector<std::int64_t> prefix_;  // [j * (n + 1) + i]
};

/// Power-of-two quantum used for lattice step h.
double noise_quantum(double h);

/// Integrals of one noise realization over nested squares
/// [x1, x1 + s_k h] x [x2, x2 + s_k h] sharing the corner (x1, x2).
///
/// Sides (in cells) must be positive and non-increasing. The squares are built
/// from independent L-shaped shells, each a N(0, cells * h^2) draw, so the
/// returned vector has exactly the law of the corresponding lattice cell sums
/// without materializing the cells.
std::vector<double> sample_nested_squares(double h, std::span<const int> sides,
                                          std::uint64_t seed);

}  // namespace nullwave
