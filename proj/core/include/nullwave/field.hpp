#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nullwave/grid.hpp"
#include "nullwave/stencil.hpp"

namespace nullwave {

enum class Provenance { linear, marching, picard, tabulated };

const char* to_string(Provenance p) noexcept;

/// Identifies the noise realization a field was computed from.
struct NoiseTag {
  std::uint64_t seed = 0;
  GridSpec grid{};
  friend bool operator==(const NoiseTag&, const NoiseTag&) = default;
};

/// Values on the lattice points (i, j), 0 <= i <= j <= n, of a grid whose origin
/// lies on the diagonal, i.e. the closed half-plane x2 >= x1 (t >= 0).
///
/// Storage is triangular and column-major in j: point (i, j) lives at j(j+1)/2 + i.
class SolutionField {
 public:
  /// Zero-filled field. Throws ConfigError if the grid is invalid or its origin is
  /// off the diagonal.
  SolutionField(const GridSpec& grid, Provenance provenance,
                std::optional<NoiseTag> noise = std::nullopt);

  /// Field with values fn(point(i, j)).
  static SolutionField tabulate(const GridSpec& grid,
                                const std::function<double(NullPoint)>& fn);

  const GridSpec& grid() const noexcept { return grid_; }
  int size() const noexcept { return grid_.n; }
  Provenance provenance() const noexcept { return provenance_; }
  const std::optional<NoiseTag>& noise() const noexcept { return noise_; }

  bool contains(int i, int j) const noexcept { return 0 <= i && i <= j && j <= grid_.n; }
  bool contains(Index2 p) const noexcept { return contains(p.i, p.j); }

  /// Unchecked access; (i, j) must satisfy contains().
  double operator()(int i, int j) const noexcept { return values_[offset(i, j)]; }
  double& operator()(int i, int j) noexcept { return values_[offset(i, j)]; }

  /// Checked access; throws RangeError.
  double at(Index2 p) const;

  /// Values (0..j, j).
  std::span<double> column(int j) noexcept {
    return {values_.data() + offset(0, j), static_cast<std::size_t>(j) + 1};
  }
  std::span<const double> column(int j) const noexcept {
    return {values_.data() + offset(0, j), static_cast<std::size_t>(j) + 1};
  }

  NullPoint point(Index2 p) const noexcept { return grid_.point(p.i, p.j); }

  /// Lattice index of a null point. Throws ConfigError when the point is not on the
  /// lattice and RangeError when it is outside the computed region.
  Index2 index_of(NullPoint q) const;

  std::span<const double> values() const noexcept { return values_; }

 private:
  static std::size_t offset(int i, int j) noexcept {
    return static_cast<std::size_t>(j) * (static_cast<std::size_t>(j) + 1) / 2 +
           static_cast<std::size_t>(i);
  }

  GridSpec grid_;
  Provenance provenance_;
  std::optional<NoiseTag> noise_;
  std::vector<double> values_;
};

/// sum_k weight_k * field(base + offset_k). Throws RangeError when a tap leaves
/// the computed region.
double apply_stencil(const SolutionField& field, const Stencil& stencil, Index2 base);

/// Space-time difference Delta^(kind)_eps of the field at (t, x), evaluated by
/// reading each of its four space-time points through the null map. Independent of
/// map_original_stencil; the two routes must agree.
double original_difference(const SolutionField& field, OriginalKind kind, double eps,
                           SpaceTimePoint at);

}  // namespace nullwave
