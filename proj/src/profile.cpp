#include "condensate/profile.hpp"

#include <cmath>
#include <string>

#include "condensate/error.hpp"

namespace condensate {

Grid::Grid(std::size_t n_points, double mass_total)
    : n_points_(n_points), mass_total_(mass_total) {
  if (n_points < 3) throw DomainError("grid needs at least 3 points");
  if (!(mass_total > 0.0) || !std::isfinite(mass_total)) {
    throw DomainError("grid mass must be positive and finite");
  }
  spacing_ = mass_total / static_cast<double>(n_points - 1);
}

double profile_lower(ProfileKind kind, const ModelParams& params) {
  return kind == ProfileKind::InverseCdf1D ? -params.r1 : 0.0;
}

double profile_upper(ProfileKind kind, const ModelParams& params) {
  return kind == ProfileKind::InverseCdf1D ? params.r1 : std::pow(params.r1, params.dim);
}

double Profile::lower() const noexcept { return profile_lower(kind, params); }
double Profile::upper() const noexcept { return profile_upper(kind, params); }

void Profile::validate() const {
  if (values.size() != grid.n_points()) {
    throw InvalidDensity("profile length " + std::to_string(values.size()) +
                         " does not match grid size " + std::to_string(grid.n_points()));
  }
  if (values.front() != lower() || values.back() != upper()) {
    throw InvalidDensity("profile endpoints are not pinned to the boundary values");
  }
  const std::size_t last = values.size() - 1;
  const double slack = kRangeSlack * (upper() - lower());
  for (std::size_t i = 0; i < last; ++i) {
    const bool edge = i == 0 || i + 1 == last;
    if (!(values[i + 1] >= values[i] - (edge ? slack : 0.0))) {
      throw InvalidDensity("profile is not nondecreasing at node " + std::to_string(i));
    }
  }
}

bool Profile::is_valid() const noexcept {
  try {
    validate();
    return true;
  } catch (...) {
    return false;
  }
}

}  // namespace condensate
