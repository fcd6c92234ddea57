#include "nullwave/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nullwave/errors.hpp"

namespace nullwave {

Stencil::Stencil(std::string name, std::vector<StencilTap> taps)
    : name_(std::move(name)), taps_(std::move(taps)) {}

Stencil Stencil::mixed(int steps1, int steps2) {
  return Stencil("d1(" + std::to_string(steps1) + ")d2(" + std::to_string(steps2) + ")",
                 {{steps1, steps2, 1.0}, {steps1, 0, -1.0}, {0, steps2, -1.0}, {0, 0, 1.0}});
}

Stencil Stencil::forward1(int steps) {
  return Stencil("d1(" + std::to_string(steps) + ")", {{steps, 0, 1.0}, {0, 0, -1.0}});
}

Stencil Stencil::forward2(int steps) {
  return Stencil("d2(" + std::to_string(steps) + ")", {{0, steps, 1.0}, {0, 0, -1.0}});
}

double Stencil::weight_sum() const noexcept {
  double s = 0.0;
  for (const auto& t : taps_) s += t.weight;
  return s;
}

int Stencil::min_d1() const noexcept {
  int m = 0;
  for (const auto& t : taps_) m = std::min(m, t.d1);
  return m;
}
int Stencil::max_d1() const noexcept {
  int m = 0;
  for (const auto& t : taps_) m = std::max(m, t.d1);
  return m;
}
int Stencil::min_d2() const noexcept {
  int m = 0;
  for (const auto& t : taps_) m = std::min(m, t.d2);
  return m;
}
int Stencil::max_d2() const noexcept {
  int m = 0;
  for (const auto& t : taps_) m = std::max(m, t.d2);
  return m;
}

int grid_steps(double length, double h, std::string_view what) {
  const double ratio = length / h;
  const double nearest = std::round(ratio);
  if (!std::isfinite(ratio) ||
      std::abs(ratio - nearest) > kAlignmentTolerance * std::max(1.0, std::abs(ratio))) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": " << length << " is not an integer multiple of h = " << h
       << "; nearest valid value is " << nearest * h;
    throw ConfigError(os.str());
  }
  return static_cast<int>(nearest);
}

const char* to_string(OriginalKind kind) noexcept {
  return kind == OriginalKind::delta1 ? "Delta1" : "Delta2";
}

Stencil map_original_stencil(OriginalKind kind, double eps, double h) {
  const int steps = grid_steps(std::numbers::sqrt2 * eps, h, "sqrt(2) * epsilon");
  Stencil s = Stencil::mixed(kind == OriginalKind::delta1 ? steps : -steps, steps);
  return Stencil(std::string(to_string(kind)) + "(" + std::to_string(steps) + ")",
                 std::vector<StencilTap>(s.taps().begin(), s.taps().end()));
}

}  // namespace nullwave
