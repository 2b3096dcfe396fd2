#include "condensate/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include "condensate/error.hpp"

namespace condensate {

namespace {

constexpr std::size_t kAuxRefinement = 10;
constexpr double kMassMismatch = 1e-3;

using Gauss = boost::math::quadrature::gauss<double, 10>;

std::vector<double> uniform_points(double lo, double hi, std::size_t cells) {
  std::vector<double> pts(cells + 1);
  for (std::size_t k = 0; k <= cells; ++k) {
    pts[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(cells);
  }
  pts.back() = hi;
  return pts;
}

// Piece integral of a density in the profile coordinate.
std::function<double(double, double)> density_piece(const DensityFn& density,
                                                    const ModelParams& params) {
  if (params.dim == 1) {
    return [&density](double a, double b) { return Gauss::integrate(density, a, b); };
  }
  const int d = params.dim;
  return [&density, d](double a, double b) {
    const double ra = std::pow(a, 1.0 / d);
    const double rb = std::pow(b, 1.0 / d);
    return Gauss::integrate([&](double r) { return density(r) * std::pow(r, d - 1); }, ra, rb);
  };
}

std::vector<double> aux_points(const ModelParams& params, std::size_t cells) {
  return uniform_points(profile_lower(kind_for(params), params),
                        profile_upper(kind_for(params), params), cells);
}

void check_density_samples(const DensityFn& density, const ModelParams& params,
                           const std::vector<double>& pts) {
  for (double y : pts) {
    const double v = params.dim == 1 ? y : std::pow(y, 1.0 / params.dim);
    const double f = density(v);
    if (!(f >= 0.0) || !std::isfinite(f)) {
      throw InvalidDensity("density is negative or not finite at " + std::to_string(v));
    }
  }
}

}  // namespace

CdfTable::CdfTable(std::vector<double> breakpoints, std::function<double(double, double)> piece,
                   std::size_t atom_index, double atom_mass)
    : points_(std::move(breakpoints)),
      piece_(std::move(piece)),
      atom_index_(atom_index),
      atom_mass_(atom_mass) {
  if (points_.size() < 2) throw DomainError("CDF table needs at least two breakpoints");
  if (atom_mass_ < 0.0) throw DomainError("atom mass must be nonnegative");
  cumulative_.resize(points_.size());
  cumulative_[0] = 0.0;
  for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
    const double m = piece_(points_[k], points_[k + 1]);
    if (!(m >= 0.0)) {
      throw InvalidDensity("CDF decreases on [" + std::to_string(points_[k]) + ", " +
                           std::to_string(points_[k + 1]) + "]");
    }
    cumulative_[k + 1] = cumulative_[k] + m + (k == atom_index_ ? atom_mass_ : 0.0);
  }
  if (atom_index_ + 1 == points_.size()) cumulative_.back() += atom_mass_;
}

double CdfTable::cdf(double y) const {
  if (y < points_.front()) return 0.0;
  if (y >= points_.back()) return total();
  const auto it = std::upper_bound(points_.begin(), points_.end(), y);
  const auto k = static_cast<std::size_t>(it - points_.begin()) - 1;
  const double atom = k == atom_index_ ? atom_mass_ : 0.0;
  return cumulative_[k] + atom + piece_(points_[k], y);
}

double CdfTable::invert(double z) const {
  if (z <= 0.0) return points_.front();
  if (z >= total()) return points_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), z);
  const auto k = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  if (k + 1 >= points_.size()) return points_.back();
  const double atom = k == atom_index_ ? atom_mass_ : 0.0;
  const double rem = z - cumulative_[k] - atom;
  if (rem <= 0.0) return points_[k];
  const double a = points_[k];
  const double b = points_[k + 1];
  const double full = cumulative_[k + 1] - cumulative_[k] - atom;
  if (rem >= full) return b;

  auto residual = [&](double y) { return piece_(a, y) - rem; };
  std::uintmax_t max_iter = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      residual, a, b, -rem, full - rem, boost::math::tools::eps_tolerance<double>(52), max_iter);
  return 0.5 * (lo + hi);
}

double density_mass(const DensityFn& density, const ModelParams& params, std::size_t aux_cells) {
  params.validate();
  const auto pts = aux_points(params, aux_cells);
  const auto piece = density_piece(density, params);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) sum += piece(pts[k], pts[k + 1]);
  return sum;
}

Profile inverse_cdf_from_table(const CdfTable& table, const ModelParams& params, const Grid& grid) {
  Profile p;
  p.kind = kind_for(params);
  p.grid = grid;
  p.params = params;
  const std::size_t n = grid.n_points();
  p.values.resize(n);
  const double lo = p.lower();
  const double hi = p.upper();
  const double scale = table.total() / grid.mass_total();
  p.values.front() = lo;
  p.values.back() = hi;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double y = table.invert(grid.node(i) * scale);
    p.values[i] = std::clamp(std::max(y, p.values[i - 1]), lo, hi);
  }
  return p;
}

Profile inverse_cdf_from_density(const DensityFn& density, const ModelParams& params,
                                 const Grid& grid) {
  params.validate();
  const std::size_t cells = kAuxRefinement * (grid.n_points() - 1);
  auto pts = aux_points(params, cells);
  check_density_samples(density, params, pts);
  const CdfTable table(std::move(pts), density_piece(density, params));
  const double mismatch = std::abs(table.total() - grid.mass_total()) / grid.mass_total();
  if (mismatch > kMassMismatch) {
    throw MassInconsistency("density mass " + std::to_string(table.total()) +
                            " does not match grid mass " + std::to_string(grid.mass_total()));
  }
  return inverse_cdf_from_table(table, params, grid);
}

std::vector<DensitySample> density_from_profile(const Profile& profile) {
  const auto& u = profile.values;
  const double h = profile.grid.spacing();
  const int d = profile.dim();
  std::vector<DensitySample> out;
  out.reserve(u.size());
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double du = u[i + 1] - u[i];
    if (du / h < kCondensateSlope) continue;
    const double mid = 0.5 * (u[i] + u[i + 1]);
    if (d == 1) {
      out.push_back({mid, h / du});
    } else {
      out.push_back({std::pow(mid, 1.0 / d), d * h / du});
    }
  }
  return out;
}

Profile minimizer_profile(const MinimizerSpec& spec, const Grid& grid) {
  const ModelParams& params = spec.params;
  params.validate();
  if (std::abs(spec.total_mass - grid.mass_total()) > 1e-12 * grid.mass_total()) {
    throw DomainError("minimiser mass does not match the grid mass");
  }
  const std::size_t cells = kAuxRefinement * (grid.n_points() - 1);
  const double theta = spec.theta;
  if (params.dim == 1) {
    auto pts = aux_points(params, cells);  // cells is even, so v = 0 is a breakpoint
    pts[cells / 2] = 0.0;
    auto piece = [theta, params](double a, double b) {
      return mass_between(theta, params, a, b, 1e-14);
    };
    const CdfTable table(std::move(pts), piece, cells / 2, spec.dirac_mass);
    return inverse_cdf_from_table(table, params, grid);
  }
  const int d = params.dim;
  auto piece = [theta, params, d](double a, double b) {
    return shell_mass(theta, params, std::pow(a, 1.0 / d), std::pow(b, 1.0 / d), 1e-14);
  };
  const CdfTable table(aux_points(params, cells), piece, 0, spec.dirac_mass);
  return inverse_cdf_from_table(table, params, grid);
}

}  // namespace condensate
