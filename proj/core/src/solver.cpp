#include "nullwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nullwave/errors.hpp"

namespace nullwave {

namespace {

// V0(i, j) = a(i) + b(j) off the diagonal, u0 on it.
struct V0Table {
  std::vector<double> a, b, diagonal;

  V0Table(const GridSpec& grid, const InitialData& data)
      : a(grid.n + 1), b(grid.n + 1), diagonal(grid.n + 1) {
    for (int k = 0; k <= grid.n; ++k) {
      const double y1 = std::numbers::sqrt2 * grid.x1(k);
      const double y2 = std::numbers::sqrt2 * grid.x2(k);
      a[k] = 0.5 * data.u0(y1) - 0.5 * data.u1.antiderivative(y1);
      b[k] = 0.5 * data.u0(y2) + 0.5 * data.u1.antiderivative(y2);
      diagonal[k] = data.u0(y1);
    }
  }

  double operator()(int i, int j) const noexcept {
    return i == j ? diagonal[i] : a[i] + b[j];
  }
};

NoiseTag tag_of(const NoiseField& noise) { return {noise.seed(), noise.grid()}; }

// One sweep of the strip recursion. `integrand_source` supplies the values at which
// F is evaluated (the field being built for marching, the previous iterate for Picard).
template <class Fn>
void sweep(const NoiseField& noise, const V0Table& v0, Fn&& F, const SolutionField* source,
           SolutionField& out) {
  const int n = noise.size();
  const double q = noise.quantum();
  std::vector<double> strip(static_cast<std::size_t>(n) + 1, 0.0);
  const SolutionField& values = source ? *source : out;
  out(0, 0) = v0(0, 0);
  for (int j = 1; j <= n; ++j) {
    const auto w = noise.row_units(j - 1);
    const auto prev = values.column(j - 1);
    for (int i = 0; i + 2 <= j; ++i) strip[i] += F(prev[i]) * (static_cast<double>(w[i]) * q);
    strip[j - 1] = 0.0;
    auto col = out.column(j);
    col[j] = v0(j, j);
    double u = 0.0;
    for (int i = j - 1; i >= 0; --i) {
      u += 0.5 * strip[i];
      col[i] = v0(i, j) + u;
    }
  }
}

void check_noise_grid(const NoiseField& noise) {
  if (!noise.grid().diagonal_origin()) {
    throw ConfigError("solver: noise grid origin must lie on the diagonal x1 = x2 (got " +
                      noise.grid().describe() + ")");
  }
}

}  // namespace

SolutionField tabulate_V0(const GridSpec& grid, const InitialData& data) {
  SolutionField f(grid, Provenance::tabulated);
  const V0Table v0(grid, data);
  for (int j = 0; j <= grid.n; ++j) {
    for (int i = 0; i <= j; ++i) f(i, j) = v0(i, j);
  }
  return f;
}

SolutionField solve_linear(const NoiseField& noise) {
  check_noise_grid(noise);
  const int n = noise.size();
  SolutionField z(noise.grid(), Provenance::linear, tag_of(noise));
  const double half_quantum = 0.5 * noise.quantum();
  std::vector<std::int64_t> strip(static_cast<std::size_t>(n) + 1, 0);
  for (int j = 1; j <= n; ++j) {
    const auto w = noise.row_units(j - 1);
    for (int i = 0; i + 2 <= j; ++i) strip[i] += w[i];
    strip[j - 1] = 0;
    auto col = z.column(j);
    col[j] = 0.0;
    std::int64_t units = 0;
    for (int i = j - 1; i >= 0; --i) {
      units += strip[i];
      col[i] = static_cast<double>(units) * half_quantum;
    }
  }
  return z;
}

SolutionField solve_marching(const NoiseField& noise, const InitialData& data,
                             const Nonlinearity& F) {
  check_noise_grid(noise);
  SolutionField v(noise.grid(), Provenance::marching, tag_of(noise));
  const V0Table v0(noise.grid(), data);
  F.visit([&](auto f) { sweep(noise, v0, f, nullptr, v); });
  return v;
}

PicardResult solve_picard(const NoiseField& noise, const InitialData& data,
                          const Nonlinearity& F, int iterations) {
  if (iterations < 1) throw ConfigError("picard: iterations must be >= 1");
  check_noise_grid(noise);
  const V0Table v0(noise.grid(), data);
  SolutionField previous(noise.grid(), Provenance::picard, tag_of(noise));
  for (int j = 0; j <= noise.size(); ++j) {
    for (int i = 0; i <= j; ++i) previous(i, j) = v0(i, j);
  }
  SolutionField current(noise.grid(), Provenance::picard, tag_of(noise));
  std::vector<double> increments;
  increments.reserve(static_cast<std::size_t>(iterations));
  for (int k = 0; k < iterations; ++k) {
    F.visit([&](auto f) { sweep(noise, v0, f, &previous, current); });
    double sup = 0.0;
    const auto a = current.values();
    const auto b = previous.values();
    for (std::size_t m = 0; m < a.size(); ++m) sup = std::max(sup, std::abs(a[m] - b[m]));
    increments.push_back(sup);
    std::swap(previous, current);
  }
  // The last iterate sits in `previous` after the final swap.
  return {std::move(previous), std::move(increments)};
}

double stencil_remainder(const SolutionField& v, const SolutionField& z, const Nonlinearity& F,
                         Index2 base, const Stencil& stencil) {
  if (v.noise() != z.noise() || v.grid() != z.grid()) {
    throw ConsistencyError("remainder: nonlinear and linear fields come from different noise");
  }
  const double dv = apply_stencil(v, stencil, base);
  const double dz = apply_stencil(z, stencil, base);
  return dv - F(v.at(base)) * dz;
}

RemainderSample remainder(const SolutionField& v, const SolutionField& z, const Nonlinearity& F,
                          Index2 base, int steps, Sign sign) {
  if (v.noise() != z.noise() || v.grid() != z.grid()) {
    throw ConsistencyError("remainder: nonlinear and linear fields come from different noise");
  }
  const Stencil stencil = Stencil::mixed(to_int(sign) * steps, steps);
  RemainderSample s;
  s.base = base;
  s.steps = steps;
  s.sign = sign;
  s.nonlinear_difference = apply_stencil(v, stencil, base);
  s.linear_term = F(v.at(base)) * apply_stencil(z, stencil, base);
  s.value = s.nonlinear_difference - s.linear_term;
  return s;
}

}  // namespace nullwave
