#pragma once

#include <vector>

#include "nullwave/field.hpp"
#include "nullwave/geometry.hpp"
#include "nullwave/noise.hpp"

namespace nullwave {

// Lattice scheme in null coordinates. Cell (i, l) contributes F(v(i, l)) W(i, l):
// the integrand is read at the cell's lattice corner (i, l), whose value only
// depends on noise in rows below l, so the discrete integral stays adapted.
// Cells on the diagonal (l == i) straddle x1 = x2 and are left out.

/// V0 on the lattice. The diagonal holds u0(sqrt2 x) exactly; other points use the
/// separable form a(i) + b(j) that the marching scheme shares.
SolutionField tabulate_V0(const GridSpec& grid, const InitialData& data);

/// Linear field Z(i, j) = 1/2 * (sum of W over cells k >= i, l <= j - 1, l >= k + 1).
/// Accumulated in the noise's integer units, so it is exact.
SolutionField solve_linear(const NoiseField& noise);

/// Nonlinear field by marching the strip recursion
///   v(i, j) = V0(i, j) + U(i, j),   U(i, j) = U(i + 1, j) + S(i, j) / 2,
///   S(i, j) = S(i, j - 1) + F(v(i, j - 1)) W(i, j - 1),   S(i, i + 1) = 0.
SolutionField solve_marching(const NoiseField& noise, const InitialData& data,
                             const Nonlinearity& F);

struct PicardResult {
  SolutionField field;
  /// sup |u^(k) - u^(k-1)| over the lattice, k = 1..iterations.
  std::vector<double> increments;
};

/// Picard iterates u^(0) = V0, u^(k) = V0 + 1/2 sum F(u^(k-1)(corner)) W(cell).
/// Throws ConfigError if iterations < 1.
PicardResult solve_picard(const NoiseField& noise, const InitialData& data,
                          const Nonlinearity& F, int iterations);

/// Linearization remainder at one base point.
struct RemainderSample {
  Index2 base{};
  int steps = 0;
  Sign sign = Sign::plus;
  /// delta delta v - F(v(base)) delta delta Z
  double value = 0.0;
  /// F(v(base)) delta delta Z
  double linear_term = 0.0;
  /// delta delta v
  double nonlinear_difference = 0.0;
};

/// R^{+-} for the mixed stencil delta^(1)_{+-steps h} delta^(2)_{steps h}.
/// Throws ConsistencyError when v and z come from different noise, RangeError when
/// the stencil leaves the computed region.
RemainderSample remainder(const SolutionField& v, const SolutionField& z, const Nonlinearity& F,
                          Index2 base, int steps, Sign sign);

/// stencil(v) - F(v(base)) stencil(z) for an arbitrary stencil.
double stencil_remainder(const SolutionField& v, const SolutionField& z, const Nonlinearity& F,
                         Index2 base, const Stencil& stencil);

}  // namespace nullwave
