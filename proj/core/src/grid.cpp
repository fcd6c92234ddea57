#include "nullwave/grid.hpp"

#include <cmath>
#include <sstream>

#include "nullwave/errors.hpp"

namespace nullwave {

void GridSpec::validate() const {
  if (n < 2) throw ConfigError("grid: n must be >= 2 (got " + std::to_string(n) + ")");
  if (!(h > 0.0) || !std::isfinite(h)) {
    std::ostringstream os;
    os << "grid: h must be a positive finite step (got " << h << ")";
    throw ConfigError(os.str());
  }
  if (!std::isfinite(origin.x1) || !std::isfinite(origin.x2)) {
    throw ConfigError("grid: origin must be finite");
  }
}

std::string GridSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "origin=(" << origin.x1 << ", " << origin.x2 << ") n=" << n << " h=" << h;
  return os.str();
}

}  // namespace nullwave
