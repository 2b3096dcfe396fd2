#pragma once

// Steady states, critical mass and entropy densities of the bosonic
// Fokker-Planck family  f_t = Lap f + div(v f (1 + f^gamma))  on B(0, R1).
//
// Mass convention: d = 1 uses the plain integral over [-R1, R1]; d >= 2 uses
// the radial integral  int_0^R1 g(r) r^(d-1) dr, i.e. the ball mass divided by
// the area of the unit sphere.

#include <cmath>
#include <optional>
#include <string>

namespace condensate {

struct ModelParams {
  double gamma = 1.0;
  int dim = 1;
  double r1 = 1.0;

  /// Throws DomainError on gamma <= 0, dim < 1 or r1 <= 0.
  void validate() const;
  /// Empty when the parameters are fine for a solver run, otherwise a warning
  /// (for instance gamma <= 2 in one dimension, which is not supercritical).
  std::string solver_warning() const;

  bool operator==(const ModelParams&) const = default;
};

/// Critical mass, or the explicit "infinite" outcome for gamma <= 2/d.
class CriticalMass {
 public:
  static CriticalMass infinite() { return CriticalMass{}; }
  static CriticalMass finite(double m) { return CriticalMass{m}; }

  bool is_infinite() const noexcept { return !value_; }
  /// Throws std::bad_optional_access when infinite.
  double value() const { return value_.value(); }

 private:
  CriticalMass() = default;
  explicit CriticalMass(double m) : value_(m) {}
  std::optional<double> value_;
};

/// Entropy minimiser of a given mass: smooth steady state (theta > 0) or the
/// critical profile plus a Dirac mass at the origin.
struct MinimizerSpec {
  double theta = 0.0;
  double dirac_mass = 0.0;
  ModelParams params;
  double total_mass = 0.0;
};

/// (exp(gamma (|v|^2/2 + theta)) - 1)^(-1/gamma). theta = 0 and |v| = 0 is the
/// singular point of the critical profile and throws DomainError.
double steady_state_density(double theta, double gamma, double v_abs);

/// Limiting profile f_c = f_{inf,0}.
inline double critical_density(double gamma, double v_abs) {
  return steady_state_density(0.0, gamma, v_abs);
}

/// Mass of f_theta restricted to a radial shell |v| in [lo, hi] (both sides of
/// the origin for d = 1), with weight r^(d-1). theta = 0 is allowed when the
/// critical mass is finite; the origin singularity is integrated analytically.
double shell_mass(double theta, const ModelParams& params, double lo, double hi,
                  double abs_tol = 1e-12);

/// Mass of f_theta on [lo, hi] for d = 1 (signed velocity, lo < hi), or on the
/// shell [lo, hi] for d >= 2.
double mass_between(double theta, const ModelParams& params, double lo, double hi,
                    double abs_tol = 1e-12);

/// m_theta under the module's convention.
double steady_state_mass(double theta, const ModelParams& params);

CriticalMass critical_mass(const ModelParams& params);

/// Inverse of theta -> m_theta by bisection in log(theta).
/// Throws DomainError for mass <= 0 and SupercriticalMass for mass >= m_c.
double theta_for_mass(double mass, const ModelParams& params);

/// Minimiser of the (measure-extended) entropy among measures of mass `mass`.
MinimizerSpec entropy_minimizer(double mass, const ModelParams& params);

/// Mobility s (1 + s^gamma).
inline double mob(double s, double gamma) { return s * (1.0 + std::pow(s, gamma)); }

/// Phi(f) = (1/gamma) int_0^f log(s^gamma / (1 + s^gamma)) ds.
double phi(double f, double gamma);
/// Phi'(f) = (1/gamma) log(f^gamma / (1 + f^gamma)).
double phi_prime(double f, double gamma);

/// Psi_d(s) = Psi(s/d) with Psi(s) = s Phi(1/s), Psi(0) = 0.
double psi(double s, double gamma, int dim = 1);
double psi_prime(double s, double gamma, int dim = 1);
double psi_second(double s, double gamma, int dim = 1);

}  // namespace condensate
