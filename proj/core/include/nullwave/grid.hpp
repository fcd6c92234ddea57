#pragma once

#include <cstdint>
#include <string>

namespace nullwave {

/// Point of the null plane, x1 = (x - t)/sqrt(2), x2 = (x + t)/sqrt(2).
struct NullPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  friend bool operator==(const NullPoint&, const NullPoint&) = default;
};

struct SpaceTimePoint {
  double t = 0.0;
  double x = 0.0;
  friend bool operator==(const SpaceTimePoint&, const SpaceTimePoint&) = default;
};

/// Lattice index pair (i along x1, j along x2).
struct Index2 {
  int i = 0;
  int j = 0;
  friend bool operator==(const Index2&, const Index2&) = default;
};

enum class Sign : int { plus = 1, minus = -1 };

inline int to_int(Sign s) noexcept { return static_cast<int>(s); }
inline const char* to_string(Sign s) noexcept { return s == Sign::plus ? "+" : "-"; }

/// Square lattice [a1, a1 + n h] x [a2, a2 + n h] of n x n cells.
struct GridSpec {
  NullPoint origin{};
  int n = 2;
  double h = 1.0;

  /// Throws ConfigError unless n >= 2 and h > 0 (both finite).
  void validate() const;

  double x1(int i) const noexcept { return origin.x1 + i * h; }
  double x2(int j) const noexcept { return origin.x2 + j * h; }
  NullPoint point(int i, int j) const noexcept { return {x1(i), x2(j)}; }

  /// True when lattice point (i, i) lies on the diagonal x1 = x2.
  bool diagonal_origin() const noexcept { return origin.x1 == origin.x2; }

  std::string describe() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Half-open block of cells [i0, i1) x [j0, j1).
struct CellRect {
  int i0 = 0;
  int i1 = 0;
  int j0 = 0;
  int j1 = 0;

  bool empty() const noexcept { return i1 <= i0 || j1 <= j0; }
  long long cell_count() const noexcept {
    return empty() ? 0 : static_cast<long long>(i1 - i0) * (j1 - j0);
  }
};

}  // namespace nullwave
