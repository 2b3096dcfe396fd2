#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "condensate/model.hpp"

namespace condensate {

/// Equispaced mass coordinate 0 = x_0 < ... < x_{n-1} = mass_total.
class Grid {
 public:
  Grid() = default;
  /// Throws DomainError when n_points < 3 or mass_total <= 0.
  Grid(std::size_t n_points, double mass_total);

  std::size_t n_points() const noexcept { return n_points_; }
  double mass_total() const noexcept { return mass_total_; }
  double spacing() const noexcept { return spacing_; }
  double node(std::size_t i) const noexcept {
    return i + 1 == n_points_ ? mass_total_ : spacing_ * static_cast<double>(i);
  }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t n_points_ = 0;
  double mass_total_ = 0.0;
  double spacing_ = 0.0;
};

enum class ProfileKind { InverseCdf1D, RadialNormalized };

/// Interior values may overshoot the pinned boundary values by this fraction
/// of the range; Newton iterates are sorted but not clamped.
inline constexpr double kRangeSlack = 1e-6;

/// Discrete pseudo-inverse CDF: u on [-R1, R1] (1D) or S = R^d on [0, R1^d].
struct Profile {
  ProfileKind kind = ProfileKind::InverseCdf1D;
  Grid grid;
  std::vector<double> values;
  ModelParams params;

  int dim() const noexcept { return kind == ProfileKind::InverseCdf1D ? 1 : params.dim; }
  /// Pinned boundary values.
  double lower() const noexcept;
  double upper() const noexcept;

  /// Throws InvalidDensity on any broken invariant: length, exact pinning,
  /// nondecreasing interior, and the boundary pairs up to kRangeSlack.
  void validate() const;
  bool is_valid() const noexcept;
};

/// Boundary values for a profile kind and parameters.
double profile_lower(ProfileKind kind, const ModelParams& params);
double profile_upper(ProfileKind kind, const ModelParams& params);

inline ProfileKind kind_for(const ModelParams& params) {
  return params.dim == 1 ? ProfileKind::InverseCdf1D : ProfileKind::RadialNormalized;
}

}  // namespace condensate
