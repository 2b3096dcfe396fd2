#pragma once

// Exact isotropic solutions of the 2D Kaniadakis-Quarati equation.
//
// With M_h(t, rho) = int_0^rho h r dr, the density f = h / (1 + M_h) solves
// KQ whenever h solves the linear Fokker-Planck equation
//   h(t, v) = int a^{-1} K_b(a^{-1/2} v - w) h0(w) dw,
//   a = e^{-2t},  b = e^{2t} - 1,  K_b(z) = (2 pi b)^{-1} e^{-|z|^2 / 2b}.
// For a Gaussian f0 = A e^{-rho^2 / 2 sigma^2} the transformed datum is
//   h0 = A e^{-rho^2 / 2 sigma^2} e^{A sigma^2 (1 - e^{-rho^2 / 2 sigma^2})}.

#include <cmath>
#include <cstddef>
#include <vector>

#include "condensate/profile.hpp"

namespace condensate {

/// Smallest R with f_c(r) <= tol for r >= R (gamma = 1): sqrt(2 log(1 + 1/tol)).
double choose_r1(double tol = 1e-4);

struct Oracle2DConfig {
  double amp = 4.0;
  double sigma = 0.9;
  double r1 = choose_r1();
  double quad_tol = 1e-12;
  /// Radius beyond which h0 is dropped; 0 selects h0 < 1e-14 * h0 bound.
  double trunc_radius = 0.0;

  /// Throws DomainError on nonpositive fields.
  void validate() const;
  double truncation() const;
  /// Mass of f0 on B(0, r1) divided by 2 pi: A sigma^2 (1 - e^{-r1^2 / 2 sigma^2}).
  double initial_mass() const;
  ModelParams params() const { return {1.0, 2, r1}; }
};

double h0_from_gaussian(const Oracle2DConfig& cfg, double rho);

/// a(t) and b(t) of the fundamental solution.
inline double kernel_a(double t) { return std::exp(-2.0 * t); }
inline double kernel_b(double t) { return std::expm1(2.0 * t); }

/// Normalised heat kernel K_b(z) in 2D as a function of |z|.
double heat_kernel(double b, double z_abs);

/// h_lin(t, rho) by radial quadrature with an exponentially scaled I_0.
/// Throws DomainError for t <= 0.
double linear_fp_solution(const Oracle2DConfig& cfg, double t, double rho);

/// f(t, rho) = h_lin / (1 + M_h) with M_h by direct nested quadrature.
/// Slow; ExactSolution2D is the tabulated equivalent.
double exact_kq_density(const Oracle2DConfig& cfg, double t, double rho);

/// h_lin(t, .) tabulated on [0, r1] by Chebyshev panels, with its partial
/// masses integrated exactly on the interpolant. Immutable after
/// construction. t = 0 uses h0 directly.
class ExactSolution2D {
 public:
  ExactSolution2D(const Oracle2DConfig& cfg, double t, std::size_t panels = 64);

  double time() const noexcept { return t_; }
  const Oracle2DConfig& config() const noexcept { return cfg_; }

  double h_lin(double rho) const;
  /// M_h(t, rho) = int_0^rho h_lin r dr.
  double partial_mass_h(double rho) const;
  double density(double rho) const;
  /// M_f(t, rho) = log(1 + M_h(t, rho)).
  double partial_mass_f(double rho) const;
  /// Mass of f outside B(0, r1) divided by 2 pi.
  double tail_mass() const { return tail_; }

 private:
  struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    double base = 0.0;              // M_h at lo
    std::vector<double> coef;       // Chebyshev coefficients of h_lin
    std::vector<double> integral;   // antiderivative of h_lin r
  };
  const Panel& panel_for(double rho) const;

  Oracle2DConfig cfg_;
  double t_;
  std::vector<Panel> panels_;
  double tail_ = 0.0;
};

/// Normalised radial pseudo-inverse of f(t, .) on `grid` from the exact CDF
/// N(s) = log(1 + M_h(t, sqrt s)). Nodes with mass beyond N(r1^2) pin to r1^2.
Profile exact_profile(const ExactSolution2D& solution, const Grid& grid);
Profile exact_profile(const Oracle2DConfig& cfg, double t, const Grid& grid);

}  // namespace condensate
