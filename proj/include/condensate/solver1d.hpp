#pragma once

// Implicit Lagrangian scheme for the 1D pseudo-inverse CDF u(t, x):
//
//   (u_x)^g u_t - (g-1)^{-1} (u_x^{g-1})_x + u (u_x^g + 1) = 0,
//   u(t, 0) = -R1,  u(t, m) = R1,
//
// with central differences in x, implicit time stepping and Newton's method
// on a tridiagonal system. Residuals are scaled by h^g.

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "condensate/diagnostics.hpp"
#include "condensate/profile.hpp"
#include "condensate/solver_config.hpp"
#include "condensate/tridiagonal.hpp"

namespace condensate {

/// Scaled residual of the configured integrator at the interior nodes
/// (length n - 2). Both arrays have length n with pinned boundary entries.
std::vector<double> residual_1d(std::span<const double> u, std::span<const double> u_prev,
                                const SolverConfig& cfg);

/// Analytic Jacobian of residual_1d with respect to the interior values.
Tridiagonal jacobian_1d(std::span<const double> u, std::span<const double> u_prev,
                        const SolverConfig& cfg);

/// One step of the configured integrator (backward Euler unless cfg says CN).
/// Throws NonConvergence when Newton exceeds cfg.newton_max_iter.
std::pair<Profile, StepReport> solve_step_1d(const Profile& u_prev, const SolverConfig& cfg);

/// One Crank-Nicolson-type step: diffusion and drift averaged between the
/// levels, the (u_x)^g prefactor of the time difference as cfg.cn_prefactor says.
std::pair<Profile, StepReport> step_cn_1d(const Profile& u_prev, const SolverConfig& cfg);

/// Per-step callback: step index (1-based), time, new profile, Newton report.
using StepObserver = std::function<void(std::size_t, double, const Profile&, const StepReport&)>;

struct EvolveOptions {
  /// Steps between entropy/condensate samples; the final step is always sampled.
  std::size_t cadence = 1;
  bool track_entropy = true;
  bool compute_h_infinity = true;
  /// Requested snapshot times (taken at the first step reaching each time).
  std::vector<double> snapshot_times;
  /// Also snapshot when the condensate appears or disappears.
  bool snapshot_condensate_events = true;
  StepObserver on_step;
};

struct EvolveResult {
  TraceSet trace;
  Profile final_profile;
};

/// Runs cfg.steps() steps from u0. Rethrows NonConvergence with the failing
/// step index.
EvolveResult evolve_1d(const Profile& u0, const SolverConfig& cfg, const EvolveOptions& opts = {});

}  // namespace condensate
