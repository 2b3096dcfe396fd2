#pragma once

// Densities <-> discrete pseudo-inverse CDFs.
//
// 1D: u(x) inverts M(v) = int_{-R1}^v f.  Radial: S(z) inverts
// N(s) = (1/d) int_0^s g(sigma^(1/d)) dsigma = int_0^{s^(1/d)} g(r) r^(d-1) dr.

#include <functional>
#include <vector>

#include "condensate/model.hpp"
#include "condensate/profile.hpp"

namespace condensate {

/// Density in the natural variable: f(v) on [-R1, R1] or g(r) on [0, R1].
using DensityFn = std::function<double(double)>;

/// Monotone CDF tabulated on breakpoints of the profile coordinate (v, or s
/// for radial profiles), optionally with one atom. Inversion is exact up to
/// root-finding tolerance inside each tabulated piece.
class CdfTable {
 public:
  /// `piece(a, b)` integrates the density over [a, b] in the coordinate;
  /// `atom_index` is the breakpoint carrying `atom_mass` (ignored when 0).
  CdfTable(std::vector<double> breakpoints, std::function<double(double, double)> piece,
           std::size_t atom_index = 0, double atom_mass = 0.0);

  double total() const noexcept { return cumulative_.back(); }
  /// Mass strictly left of breakpoint k.
  double left_mass(std::size_t k) const { return cumulative_.at(k); }
  double cdf(double y) const;
  /// Smallest y with cdf(y) >= z (atoms map a whole mass interval to one point).
  double invert(double z) const;

 private:
  std::vector<double> points_;
  std::function<double(double, double)> piece_;
  std::vector<double> cumulative_;  // left limits at breakpoints
  std::size_t atom_index_;
  double atom_mass_;
};

/// Mass of a density under the module convention (1D plain, radial r^(d-1)),
/// computed on the same auxiliary mesh used for inversion.
double density_mass(const DensityFn& density, const ModelParams& params, std::size_t aux_cells);

/// Discrete pseudo-inverse of a density on `grid`. The CDF is tabulated on an
/// auxiliary mesh ten times finer than the grid and inverted node by node.
/// Throws MassInconsistency when the density mass differs from
/// grid.mass_total() by more than 0.1%, InvalidDensity on negative samples.
Profile inverse_cdf_from_density(const DensityFn& density, const ModelParams& params,
                                 const Grid& grid);

/// Pseudo-inverse of an already tabulated CDF (exact CDFs, minimisers).
/// Node masses are scaled to the table total so the endpoints pin exactly.
Profile inverse_cdf_from_table(const CdfTable& table, const ModelParams& params, const Grid& grid);

struct DensitySample {
  double v = 0.0;  ///< velocity (1D) or radius (radial)
  double f = 0.0;
};

/// Slope threshold below which a cell is treated as condensate and skipped.
inline constexpr double kCondensateSlope = 1e-8;

/// Density samples at cell midpoints: f = h / du (1D) or g = d h / dS at
/// r = S_mid^(1/d). Cells with du/h < kCondensateSlope are omitted.
std::vector<DensitySample> density_from_profile(const Profile& profile);

/// Discrete pseudo-inverse of the entropy minimiser; the Dirac part becomes
/// an exactly flat zero block. Requires spec.total_mass == grid.mass_total().
Profile minimizer_profile(const MinimizerSpec& spec, const Grid& grid);

}  // namespace condensate
