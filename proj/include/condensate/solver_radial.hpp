#pragma once

// Implicit scheme for the normalised radial pseudo-inverse S(t, z), d = 2, 3:
//
//   d^{-1} S_z S_t - d (S + delta)^{2 - 2/d} (log(S_z + eps))_z + S (S_z + d) = 0,
//   S(t, 0) = 0,  S(t, m) = R1^d.
//
// For gamma != 1 the power-law family
//   (S_z)^g S_t / d - d/(g-1) (S + delta)^{2-2/d} ((S_z + eps)^{g-1})_z + S (S_z^g + d^g) = 0
// shares the same interface. residual_radial returns the unscaled system; the
// Newton stopping test multiplies it by h^g as in the 1D scheme.

#include <span>
#include <utility>
#include <vector>

#include "condensate/profile.hpp"
#include "condensate/solver1d.hpp"
#include "condensate/solver_config.hpp"
#include "condensate/tridiagonal.hpp"

namespace condensate {

struct RadialState {
  Profile profile;
  double time = 0.0;
};

/// Interior residual (length n - 2). Throws LogSingularity when eps = 0 and a
/// forward difference vanishes.
std::vector<double> residual_radial(std::span<const double> s, std::span<const double> s_prev,
                                    const SolverConfig& cfg);

Tridiagonal jacobian_radial(std::span<const double> s, std::span<const double> s_prev,
                            const SolverConfig& cfg);

std::pair<RadialState, StepReport> solve_step_radial(const RadialState& prev,
                                                     const SolverConfig& cfg);

/// Profile-level step with the same signature as solve_step_1d.
std::pair<Profile, StepReport> solve_step_radial_profile(const Profile& prev,
                                                         const SolverConfig& cfg);

EvolveResult evolve_radial(const Profile& s0, const SolverConfig& cfg,
                           const EvolveOptions& opts = {});

}  // namespace condensate
