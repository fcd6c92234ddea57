#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nullwave/grid.hpp"

namespace nullwave {

/// One tap of a finite-difference pattern: offset in grid units and weight.
struct StencilTap {
  int d1 = 0;
  int d2 = 0;
  double weight = 0.0;
  friend bool operator==(const StencilTap&, const StencilTap&) = default;
};

/// Signed finite-difference pattern in grid units.
class Stencil {
 public:
  Stencil(std::string name, std::vector<StencilTap> taps);

  /// Mixed second difference delta^(1)_{s1 h} delta^(2)_{s2 h}; steps may be negative.
  static Stencil mixed(int steps1, int steps2);
  /// delta^(1)_{s h}
  static Stencil forward1(int steps);
  /// delta^(2)_{s h}
  static Stencil forward2(int steps);

  std::span<const StencilTap> taps() const noexcept { return taps_; }
  const std::string& name() const noexcept { return name_; }
  double weight_sum() const noexcept;

  /// Bounding box of the offsets.
  int min_d1() const noexcept;
  int max_d1() const noexcept;
  int min_d2() const noexcept;
  int max_d2() const noexcept;

  friend bool operator==(const Stencil&, const Stencil&) = default;

 private:
  std::string name_;
  std::vector<StencilTap> taps_;
};

/// Number of lattice steps in `length`. Throws ConfigError naming `what` and the
/// nearest aligned value when length is not an integer multiple of h.
int grid_steps(double length, double h, std::string_view what = "length");

/// Relative tolerance for treating a length as an exact multiple of h.
inline constexpr double kAlignmentTolerance = 1e-9;

/// Space-time second differences of the original coordinates.
enum class OriginalKind { delta1, delta2 };

const char* to_string(OriginalKind kind) noexcept;

/// Null-lattice stencil equal to the space-time difference of size eps:
/// Delta^(1)_eps -> delta^(1)_{e} delta^(2)_{e}, Delta^(2)_eps -> delta^(1)_{-e} delta^(2)_{e},
/// with e = sqrt(2) eps. Throws ConfigError unless sqrt(2) eps is a multiple of h.
Stencil map_original_stencil(OriginalKind kind, double eps, double h);

}  // namespace nullwave
