#pragma once

#include <cstddef>
#include <string>

#include "condensate/model.hpp"
#include "condensate/profile.hpp"

namespace condensate {

enum class Integrator { BackwardEuler, CrankNicolson };

/// Level of the (u_x)^g prefactor of the time difference in Crank-Nicolson
/// steps: the mean of both levels (second order), or the new level only
/// (first order in time). Both keep a flat zero block fixed.
enum class CnPrefactor { Average, NewLevel };

std::string to_string(Integrator integrator);
/// Accepts "be", "backward_euler", "cn", "crank_nicolson" (case-insensitive).
Integrator integrator_from_string(const std::string& name);

/// Default condensate thresholds on profile values.
inline constexpr double kCondensateThreshold1D = 1e-6;
inline constexpr double kCondensateThresholdRadial = 1e-10;

struct SolverConfig {
  ModelParams params;
  Grid grid;
  double tau = 1e-3;
  double t_final = 1.0;
  Integrator integrator = Integrator::BackwardEuler;
  CnPrefactor cn_prefactor = CnPrefactor::Average;
  double newton_tol = 1e-8;
  int newton_max_iter = 50;
  /// Sort Newton iterates (monotone rearrangement).
  bool rearrange = true;
  /// Use |du| instead of max(du, 0) in the 1D stencil.
  bool abs_slope = false;
  /// Retry a failed step as two half steps (recursively, up to 6 levels).
  bool retry_halving = false;
  double eps_reg = 0.0;
  double delta_reg = 0.0;
  double condensate_threshold = kCondensateThreshold1D;

  /// Throws DomainError on invalid settings.
  void validate() const;
  /// Number of steps of size tau that fit in [0, t_final].
  std::size_t steps() const;

  static double default_threshold(int dim) {
    return dim == 1 ? kCondensateThreshold1D : kCondensateThresholdRadial;
  }
};

struct StepReport {
  int newton_iterations = 0;
  double final_residual_norm = 0.0;
  int rearrangements_applied = 0;
};

}  // namespace condensate
