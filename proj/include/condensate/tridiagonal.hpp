#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace condensate {

/// Square tridiagonal matrix; lower[0] and upper[m-1] are unused.
struct Tridiagonal {
  std::vector<double> lower, diag, upper;

  Tridiagonal() = default;
  explicit Tridiagonal(std::size_t m) : lower(m, 0.0), diag(m, 0.0), upper(m, 0.0) {}

  std::size_t size() const noexcept { return diag.size(); }
  /// Entry (i, j); zero outside the band.
  double at(std::size_t i, std::size_t j) const;
  std::vector<double> multiply(std::span<const double> x) const;
};

/// Pivot magnitude below which elimination gives up.
inline constexpr double kMinPivot = 1e-14;

/// Thomas elimination without pivoting. Overwrites `rhs` with the solution.
/// Throws NonConvergence when a pivot falls below kMinPivot in magnitude.
void solve_tridiagonal(const Tridiagonal& a, std::span<double> rhs);

}  // namespace condensate
