#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "condensate/profile.hpp"

namespace condensate {

struct TimeValue {
  double t = 0.0;
  double value = 0.0;
};

struct Snapshot {
  double t = 0.0;
  Profile profile;
};

/// Time series collected along a run.
struct TraceSet {
  std::vector<TimeValue> entropy;
  std::vector<TimeValue> condensate;
  std::vector<Snapshot> snapshots;
  /// Entropy of the discretised minimiser on the same grid.
  double h_infinity = std::numeric_limits<double>::quiet_NaN();
  /// Largest H(n+1) - H(n) over consecutive entropy samples (negative when
  /// the entropy decreased everywhere).
  double max_entropy_increase = -std::numeric_limits<double>::infinity();
  /// Largest deviation of the boundary values from their pinned values.
  double max_boundary_drift = 0.0;
  std::size_t steps = 0;
  std::size_t newton_iterations = 0;
  std::size_t rearrangements = 0;
};

/// H(u) = sum over cells of h [ (u_i^2 + u_{i+1}^2)/4 + Psi((u_{i+1} - u_i)/h) ].
double entropy_1d(const Profile& u);

/// H_d(S) = sum over cells of h [ (S_i^{2/d} + S_{i+1}^{2/d})/4 + Psi_d((S_{i+1} - S_i)/h) ].
double entropy_radial(const Profile& s);

/// Dispatches on the profile kind.
double entropy(const Profile& profile);

/// Length of the flat set {u = 0} (1D) or {S = 0} (radial) on the mass axis:
/// h * (k - 1) for k interior nodes with |u_i| < threshold in 1D, h * k for k
/// interior nodes with S_i < threshold radially.
double condensate_size(const Profile& profile, double threshold);

/// Exponential rate alpha from a least-squares fit of log(H - H_inf) on
/// samples with t in [t1, t2]. Throws DomainError ("window invalid") when the
/// window holds fewer than two samples or a nonpositive relative entropy.
double decay_rate(const TraceSet& trace, double t1, double t2);

/// Near-singularity models, both fitted as y = c |v| through the origin:
/// Ratio uses y = f / f_c - 1, Difference uses y = f - f_c.
enum class ProfileModel { Ratio, Difference };

/// Difference in 1D (f - f_c = c |v|), Ratio for d >= 2 (f / f_c = 1 + c |v|).
ProfileModel default_profile_model(int dim);

struct ProfileFit {
  ProfileModel model = ProfileModel::Ratio;
  double c_tilde = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
};

/// Fits the near-singularity model on density samples with |v| in
/// [v_min, v_max]. Samples use centred differences and skip the 3 nodes on
/// each side of the flat set. Throws DomainError ("insufficient samples")
/// with fewer than 5 samples.
ProfileFit blowup_profile_fit(const Profile& profile, double v_min, double v_max,
                              ProfileModel model);

/// As above with default_profile_model(profile.dim()).
ProfileFit blowup_profile_fit(const Profile& profile, double v_min, double v_max);

}  // namespace condensate
