#include "nullwave/geometry.hpp"

#include <cmath>
#include <numbers>

#include "nullwave/detail/text.hpp"
#include "nullwave/errors.hpp"

namespace nullwave {

namespace {

// log(cosh(z)) without overflow.
double log_cosh(double z) noexcept {
  const double a = std::abs(z);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

std::string with_args(const char* name, std::initializer_list<double> args) {
  std::string out = name;
  out += '(';
  bool first = true;
  for (double a : args) {
    if (!first) out += ", ";
    out += detail::format_double(a);
    first = false;
  }
  out += ')';
  return out;
}

void require_arity(const detail::Call& call, std::size_t arity, std::string_view usage) {
  if (call.args.size() != arity) {
    throw ConfigError("preset '" + call.name + "' expects " + std::to_string(arity) +
                      " argument(s); use " + std::string(usage));
  }
}

}  // namespace

ScalarPreset ScalarPreset::sine(double amplitude, double frequency) {
  if (!std::isfinite(amplitude) || !std::isfinite(frequency)) {
    throw ConfigError("sine preset: parameters must be finite");
  }
  return ScalarPreset(Kind::sine, amplitude, frequency);
}

ScalarPreset ScalarPreset::tanh_ramp(double amplitude, double width) {
  if (!std::isfinite(amplitude) || !(width > 0.0) || !std::isfinite(width)) {
    throw ConfigError("tanh_ramp preset: amplitude must be finite and width positive");
  }
  return ScalarPreset(Kind::tanh_ramp, amplitude, width);
}

ScalarPreset ScalarPreset::parse(std::string_view text) {
  const auto call = detail::parse_call(text);
  if (!call) throw ConfigError("cannot parse data preset '" + std::string(text) + "'");
  if (call->name == "zero") {
    require_arity(*call, 0, "zero");
    return zero();
  }
  if (call->name == "constant") {
    require_arity(*call, 1, "constant(c)");
    if (!std::isfinite(call->args[0])) throw ConfigError("constant preset: value must be finite");
    return constant(call->args[0]);
  }
  if (call->name == "sine") {
    require_arity(*call, 2, "sine(amplitude, frequency)");
    return sine(call->args[0], call->args[1]);
  }
  if (call->name == "tanh_ramp") {
    require_arity(*call, 2, "tanh_ramp(amplitude, width)");
    return tanh_ramp(call->args[0], call->args[1]);
  }
  throw ConfigError("unknown data preset '" + call->name +
                    "'; expected zero, constant(c), sine(a, k) or tanh_ramp(a, w)");
}

double ScalarPreset::operator()(double y) const noexcept {
  switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::constant: return a_;
    case Kind::sine: return a_ * std::sin(b_ * y);
    case Kind::tanh_ramp: return a_ * std::tanh(y / b_);
  }
  return 0.0;
}

double ScalarPreset::antiderivative(double y) const noexcept {
  switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::constant: return a_ * y;
    case Kind::sine: return b_ == 0.0 ? 0.0 : -a_ * std::cos(b_ * y) / b_;
    case Kind::tanh_ramp: return a_ * b_ * log_cosh(y / b_);
  }
  return 0.0;
}

bool ScalarPreset::is_zero() const noexcept {
  switch (kind_) {
    case Kind::zero: return true;
    case Kind::constant: return a_ == 0.0;
    case Kind::sine: return a_ == 0.0 || b_ == 0.0;
    case Kind::tanh_ramp: return a_ == 0.0;
  }
  return false;
}

std::string ScalarPreset::name() const {
  switch (kind_) {
    case Kind::zero: return "zero";
    case Kind::constant: return with_args("constant", {a_});
    case Kind::sine: return with_args("sine", {a_, b_});
    case Kind::tanh_ramp: return with_args("tanh_ramp", {a_, b_});
  }
  return "zero";
}

double eval_V0(const InitialData& data, NullPoint q) noexcept {
  const double y1 = std::numbers::sqrt2 * q.x1;
  const double y2 = std::numbers::sqrt2 * q.x2;
  return 0.5 * (data.u0(y1) + data.u0(y2)) +
         0.5 * (data.u1.antiderivative(y2) - data.u1.antiderivative(y1));
}

Nonlinearity Nonlinearity::affine(double slope, double offset) {
  if (!std::isfinite(slope) || !std::isfinite(offset)) {
    throw ConfigError("affine nonlinearity: parameters must be finite");
  }
  return Nonlinearity(Kind::affine, slope, offset);
}

Nonlinearity Nonlinearity::parse(std::string_view text) {
  const auto call = detail::parse_call(text);
  if (!call) throw ConfigError("cannot parse nonlinearity '" + std::string(text) + "'");
  const auto& name = call->name;
  if (name == "affine") {
    require_arity(*call, 2, "affine(slope, offset)");
    return affine(call->args[0], call->args[1]);
  }
  if (!call->args.empty()) throw ConfigError("nonlinearity '" + name + "' takes no arguments");
  if (name == "one") return one();
  if (name == "zero") return zero();
  if (name == "identity") return identity();
  if (name == "sin") return sine();
  if (name == "tanh") return tanh();
  throw ConfigError("unknown nonlinearity '" + name +
                    "'; expected one, zero, identity, sin, tanh or affine(a, b)");
}

double Nonlinearity::lipschitz() const noexcept {
  switch (kind_) {
    case Kind::one:
    case Kind::zero: return 0.0;
    case Kind::identity:
    case Kind::sine:
    case Kind::tanh: return 1.0;
    case Kind::affine: return std::abs(slope_);
  }
  return 0.0;
}

bool Nonlinearity::is_constant() const noexcept { return lipschitz() == 0.0; }

std::string Nonlinearity::name() const {
  switch (kind_) {
    case Kind::one: return "one";
    case Kind::zero: return "zero";
    case Kind::identity: return "identity";
    case Kind::sine: return "sin";
    case Kind::tanh: return "tanh";
    case Kind::affine: return with_args("affine", {slope_, offset_});
  }
  return "one";
}

}  // namespace nullwave
