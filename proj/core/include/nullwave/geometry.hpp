#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "nullwave/grid.hpp"

namespace nullwave {

inline NullPoint to_null(SpaceTimePoint p) noexcept {
  constexpr double r = 1.0 / std::numbers::sqrt2;
  return {(p.x - p.t) * r, (p.x + p.t) * r};
}

inline SpaceTimePoint from_null(NullPoint q) noexcept {
  constexpr double r = 1.0 / std::numbers::sqrt2;
  return {(q.x2 - q.x1) * r, (q.x1 + q.x2) * r};
}

/// Closed-form scalar function of one variable used for the initial data.
/// Each preset is bounded with a bounded derivative and has an exact antiderivative.
class ScalarPreset {
 public:
  enum class Kind { zero, constant, sine, tanh_ramp };

  static ScalarPreset zero() { return ScalarPreset(Kind::zero, 0.0, 0.0); }
  static ScalarPreset constant(double c) { return ScalarPreset(Kind::constant, c, 0.0); }
  /// amplitude * sin(frequency * y)
  static ScalarPreset sine(double amplitude, double frequency);
  /// amplitude * tanh(y / width)
  static ScalarPreset tanh_ramp(double amplitude, double width);

  /// Parses "zero", "constant(c)", "sine(a, k)" or "tanh_ramp(a, w)".
  static ScalarPreset parse(std::string_view text);

  double operator()(double y) const noexcept;
  double antiderivative(double y) const noexcept;

  Kind kind() const noexcept { return kind_; }
  bool is_zero() const noexcept;
  bool is_constant() const noexcept { return kind_ == Kind::zero || kind_ == Kind::constant; }
  std::string name() const;

  friend bool operator==(const ScalarPreset&, const ScalarPreset&) = default;

 private:
  ScalarPreset(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
  Kind kind_;
  double a_;
  double b_;
};

/// Initial position u0 and velocity u1.
struct InitialData {
  ScalarPreset u0 = ScalarPreset::zero();
  ScalarPreset u1 = ScalarPreset::zero();

  /// Both presets constant in space, so the data term is constant in the null plane.
  bool is_constant() const noexcept { return u0.is_constant() && u1.is_zero(); }

  friend bool operator==(const InitialData&, const InitialData&) = default;
};

/// Free-wave term V0(x1, x2) = (u0(sqrt2 x1) + u0(sqrt2 x2))/2 + (1/2) int_{sqrt2 x1}^{sqrt2 x2} u1.
double eval_V0(const InitialData& data, NullPoint q) noexcept;

/// Lipschitz nonlinearity F multiplying the noise.
class Nonlinearity {
 public:
  enum class Kind { one, zero, identity, sine, tanh, affine };

  static Nonlinearity one() { return Nonlinearity(Kind::one, 0.0, 1.0); }
  static Nonlinearity zero() { return Nonlinearity(Kind::zero, 0.0, 0.0); }
  static Nonlinearity identity() { return Nonlinearity(Kind::identity, 1.0, 0.0); }
  static Nonlinearity sine() { return Nonlinearity(Kind::sine, 1.0, 0.0); }
  static Nonlinearity tanh() { return Nonlinearity(Kind::tanh, 1.0, 0.0); }
  /// slope * s + offset
  static Nonlinearity affine(double slope, double offset);

  /// Parses "one", "zero", "identity", "sin", "tanh" or "affine(a, b)".
  static Nonlinearity parse(std::string_view text);

  double operator()(double s) const noexcept {
    switch (kind_) {
      case Kind::one: return 1.0;
      case Kind::zero: return 0.0;
      case Kind::identity: return s;
      case Kind::sine: return std::sin(s);
      case Kind::tanh: return std::tanh(s);
      case Kind::affine: return slope_ * s + offset_;
    }
    return 0.0;
  }

  /// Calls `fn` with a stateless callable for the preset, so hot loops can be
  /// instantiated once per kind instead of switching per cell.
  template <class Fn>
  decltype(auto) visit(Fn&& fn) const {
    switch (kind_) {
      case Kind::one: return fn([](double) noexcept { return 1.0; });
      case Kind::zero: return fn([](double) noexcept { return 0.0; });
      case Kind::identity: return fn([](double s) noexcept { return s; });
      case Kind::sine: return fn([](double s) noexcept { return std::sin(s); });
      case Kind::tanh: return fn([](double s) noexcept { return std::tanh(s); });
      case Kind::affine:
        break;
    }
    const double a = slope_, b = offset_;
    return fn([a, b](double s) noexcept { return a * s + b; });
  }

  double lipschitz() const noexcept;
  bool is_constant() const noexcept;
  Kind kind() const noexcept { return kind_; }
  std::string name() const;

  friend bool operator==(const Nonlinearity&, const Nonlinearity&) = default;

 private:
  Nonlinearity(Kind kind, double slope, double offset)
      : kind_(kind), slope_(slope), offset_(offset) {}
  Kind kind_;
  double slope_;
  double offset_;
};

}  // namespace nullwave
