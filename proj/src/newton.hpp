#pragma once

// Newton iteration with monotone rearrangement, shared by both solvers.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "condensate/error.hpp"
#include "condensate/solver_config.hpp"
#include "condensate/tridiagonal.hpp"

namespace condensate::detail {

inline double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Sorts the interior of `u` ascending. Returns whether anything moved.
/// Values are not clamped to the pinned range: clamping an undershoot at the
/// condensate edge to exactly zero holds the flat part in place artificially.
inline bool rearrange(std::vector<double>& u) {
  auto first = u.begin() + 1;
  auto last = u.end() - 1;
  if (std::is_sorted(first, last)) return false;
  std::sort(first, last);
  return true;
}

/// `assemble(u, F, J)` fills the interior residual and Jacobian at `u`.
/// Iterates until the l2 norm of norm_scale * F drops below cfg.newton_tol
/// after at least one update.
template <class Assemble>
StepReport newton_solve(std::vector<double>& u, const SolverConfig& cfg,
                        Assemble&& assemble, double norm_scale = 1.0) {
  const std::size_t m = u.size() - 2;
  std::vector<double> f(m);
  Tridiagonal jac(m);
  StepReport report;
  for (int it = 0;; ++it) {
    assemble(u, f, jac);
    const double norm = norm_scale * l2_norm(f);
    report.final_residual_norm = norm;
    if (!std::isfinite(norm)) {
      throw NonConvergence("Newton residual is not finite", norm);
    }
    // At least one update per step: the h^gamma scaling makes the residual of
    // the previous level fall below the tolerance long before equilibrium.
    if (norm < cfg.newton_tol && it > 0) return report;
    if (it >= cfg.newton_max_iter) {
      throw NonConvergence("Newton did not converge in " + std::to_string(cfg.newton_max_iter) +
                               " iterations (residual " + std::to_string(norm) + ")",
                           norm);
    }
    for (double& x : f) x = -x;
    solve_tridiagonal(jac, f);
    for (std::size_t k = 0; k < m; ++k) u[k + 1] += f[k];
    ++report.newton_iterations;
    if (cfg.rearrange && rearrange(u)) ++report.rearrangements_applied;
  }
}

}  // namespace condensate::detail
