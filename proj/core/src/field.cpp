#include "nullwave/field.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "nullwave/errors.hpp"
#include "nullwave/geometry.hpp"

namespace nullwave {

const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::linear: return "linear";
    case Provenance::marching: return "marching";
    case Provenance::picard: return "picard";
    case Provenance::tabulated: return "tabulated";
  }
  return "tabulated";
}

SolutionField::SolutionField(const GridSpec& grid, Provenance provenance,
                             std::optional<NoiseTag> noise)
    : grid_(grid), provenance_(provenance), noise_(noise) {
  grid_.validate();
  if (!grid_.diagonal_origin()) {
    throw ConfigError("solution field: grid origin must lie on the diagonal x1 = x2 (got " +
                      grid_.describe() + ")");
  }
  values_.assign(offset(0, grid_.n + 1), 0.0);
}

SolutionField SolutionField::tabulate(const GridSpec& grid,
                                      const std::function<double(NullPoint)>& fn) {
  SolutionField f(grid, Provenance::tabulated);
  for (int j = 0; j <= grid.n; ++j) {
    for (int i = 0; i <= j; ++i) f(i, j) = fn(grid.point(i, j));
  }
  return f;
}

double SolutionField::at(Index2 p) const {
  if (!contains(p)) {
    std::ostringstream os;
    os << "field: point (" << p.i << ", " << p.j << ") outside the computed region "
       << "0 <= i <= j <= " << grid_.n;
    throw RangeError(os.str());
  }
  return (*this)(p.i, p.j);
}

Index2 SolutionField::index_of(NullPoint q) const {
  const int i = grid_steps(q.x1 - grid_.origin.x1, grid_.h, "x1 offset");
  const int j = grid_steps(q.x2 - grid_.origin.x2, grid_.h, "x2 offset");
  if (!contains(i, j)) {
    std::ostringstream os;
    os.precision(17);
    os << "field: null point (" << q.x1 << ", " << q.x2 << ") maps to (" << i << ", " << j
       << "), outside the computed region";
    throw RangeError(os.str());
  }
  return {i, j};
}

double apply_stencil(const SolutionField& field, const Stencil& stencil, Index2 base) {
  double sum = 0.0;
  for (const auto& tap : stencil.taps()) {
    const Index2 p{base.i + tap.d1, base.j + tap.d2};
    if (!field.contains(p)) {
      std::ostringstream os;
      os << "stencil " << stencil.name() << " at (" << base.i << ", " << base.j
         << ") reaches (" << p.i << ", " << p.j << "), outside 0 <= i <= j <= " << field.size();
      throw RangeError(os.str());
    }
    sum += tap.weight * field(p.i, p.j);
  }
  return sum;
}

double original_difference(const SolutionField& field, OriginalKind kind, double eps,
                           SpaceTimePoint at) {
  const double t = at.t, x = at.x;
  struct Term {
    SpaceTimePoint p;
    double w;
  };
  // Delta1 f = f(t, x+2e) - f(t-e, x+e) - f(t+e, x+e) + f(t, x)
  // Delta2 f = f(t+2e, x) - f(t+e, x-e) - f(t+e, x+e) + f(t, x)
  const std::array<Term, 4> terms =
      kind == OriginalKind::delta1
          ? std::array<Term, 4>{{{{t, x + 2 * eps}, 1.0},
                                 {{t - eps, x + eps}, -1.0},
                                 {{t + eps, x + eps}, -1.0},
                                 {{t, x}, 1.0}}}
          : std::array<Term, 4>{{{{t + 2 * eps, x}, 1.0},
                                 {{t + eps, x - eps}, -1.0},
                                 {{t + eps, x + eps}, -1.0},
                                 {{t, x}, 1.0}}};
  double sum = 0.0;
  for (const auto& term : terms) {
    const Index2 q = field.index_of(to_null(term.p));
    sum += term.w * field(q.i, q.j);
  }
  return sum;
}

}  // namespace nullwave
