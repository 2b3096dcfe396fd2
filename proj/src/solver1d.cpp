#include "condensate/solver1d.hpp"

#include <cmath>
#include <limits>

#include "condensate/error.hpp"
#include "evolve_driver.hpp"
#include "newton.hpp"

namespace condensate {

namespace {

// Effective first difference and its derivative with respect to the raw one.
struct Slope {
  double value;
  double sign;
};

Slope effective(double diff, bool abs_slope) {
  if (abs_slope) return {std::abs(diff), diff >= 0.0 ? 1.0 : -1.0};
  return diff > 0.0 ? Slope{diff, 1.0} : Slope{0.0, 0.0};
}

// x^(g-1) and x^(g-2) for x >= 0, with the limits at 0 for g > 1.
struct Powers {
  double pm1;
  double pm2;
};

Powers powers(double x, double gamma) {
  if (x > 0.0) {
    const double p = std::pow(x, gamma - 1.0);
    return {p, p / x};
  }
  const double inf = std::numeric_limits<double>::infinity();
  return {0.0, gamma > 2.0 ? 0.0 : (gamma == 2.0 ? 1.0 : inf)};
}

// Nonlinear diffusion and drift part G_i (already scaled by h^g) at interior
// node i of `u`.
double stencil_rest(const double* u, std::size_t i, double gamma, double hg, bool abs_slope) {
  const Slope c = effective(u[i + 1] - u[i - 1], abs_slope);
  const double a = std::pow(0.5 * c.value, gamma);
  const double p = powers(effective(u[i + 1] - u[i], abs_slope).value, gamma).pm1;
  const double mm = powers(effective(u[i] - u[i - 1], abs_slope).value, gamma).pm1;
  return -(p - mm) / (gamma - 1.0) + u[i] * (a + hg);
}

// Fills F (may be null) and J (may be null) for the interior rows.
void assemble_1d(std::span<const double> u, std::span<const double> prev, const SolverConfig& cfg,
                 double* f, Tridiagonal* jac) {
  const double gamma = cfg.params.gamma;
  const double h = cfg.grid.spacing();
  const double hg = std::pow(h, gamma);
  const double tau = cfg.tau;
  const bool abs_slope = cfg.abs_slope;
  const double w = cfg.integrator == Integrator::CrankNicolson ? 0.5 : 1.0;
  // Weight of the new level in the time-derivative prefactor.
  const double wa = w != 1.0 && cfg.cn_prefactor == CnPrefactor::Average ? w : 1.0;
  const std::size_t n = u.size();

  Slope left = effective(u[1] - u[0], abs_slope);
  Powers left_pow = powers(left.value, gamma);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Slope right = effective(u[i + 1] - u[i], abs_slope);
    const Powers right_pow = powers(right.value, gamma);
    const Slope centre = effective(u[i + 1] - u[i - 1], abs_slope);
    const double half = 0.5 * centre.value;
    const double a = std::pow(half, gamma);
    // dA/du_{i+1}; dA/du_{i-1} is its negative.
    const double da = half > 0.0 ? 0.5 * gamma * a / half * centre.sign : 0.0;
    const double dt = (u[i] - prev[i]) / tau;
    double pref = a;
    if (wa != 1.0) {
      const double old = std::pow(0.5 * effective(prev[i + 1] - prev[i - 1], abs_slope).value, gamma);
      pref = wa * a + (1.0 - wa) * old;
    }

    if (f) {
      double g_now = -(right_pow.pm1 - left_pow.pm1) / (gamma - 1.0) + u[i] * (a + hg);
      double value = pref * dt + w * g_now;
      if (w != 1.0) value += (1.0 - w) * stencil_rest(prev.data(), i, gamma, hg, abs_slope);
      f[i - 1] = value;
    }
    if (jac) {
      const std::size_t k = i - 1;
      const double dp = right.sign * right_pow.pm2;
      const double dm = left.sign * left_pow.pm2;
      jac->diag[k] = pref / tau + w * (dp + dm + a + hg);
      if (k + 1 < jac->size()) jac->upper[k] = wa * da * dt + w * (-dp + u[i] * da);
      if (k > 0) jac->lower[k] = -wa * da * dt + w * (-dm - u[i] * da);
    }
    left = right;
    left_pow = right_pow;
  }
}

void check_inputs(std::span<const double> u, std::span<const double> prev,
                  const SolverConfig& cfg) {
  if (u.size() != prev.size() || u.size() != cfg.grid.n_points()) {
    throw DomainError("profile arrays do not match the grid");
  }
  if (!(cfg.params.gamma > 1.0)) {
    throw DomainError("the 1D scheme needs gamma > 1 (gamma > 2 for supercritical runs)");
  }
}

Profile with_values(const Profile& like, std::vector<double> values) {
  Profile p = like;
  p.values = std::move(values);
  return p;
}

std::pair<Profile, StepReport> step_impl(const Profile& u_prev, const SolverConfig& cfg) {
  check_inputs(u_prev.values, u_prev.values, cfg);
  std::vector<double> u = u_prev.values;
  const auto& prev = u_prev.values;
  auto assemble = [&](const std::vector<double>& x, std::vector<double>& f, Tridiagonal& j) {
    assemble_1d(x, prev, cfg, f.data(), &j);
  };
  const StepReport report =
      detail::newton_solve(u, cfg, assemble);
  return {with_values(u_prev, std::move(u)), report};
}

}  // namespace

std::vector<double> residual_1d(std::span<const double> u, std::span<const double> u_prev,
                                const SolverConfig& cfg) {
  check_inputs(u, u_prev, cfg);
  std::vector<double> f(u.size() - 2);
  assemble_1d(u, u_prev, cfg, f.data(), nullptr);
  return f;
}

Tridiagonal jacobian_1d(std::span<const double> u, std::span<const double> u_prev,
                        const SolverConfig& cfg) {
  check_inputs(u, u_prev, cfg);
  Tridiagonal j(u.size() - 2);
  assemble_1d(u, u_prev, cfg, nullptr, &j);
  return j;
}

std::pair<Profile, StepReport> solve_step_1d(const Profile& u_prev, const SolverConfig& cfg) {
  return detail::step_with_retry(u_prev, cfg, step_impl);
}

std::pair<Profile, StepReport> step_cn_1d(const Profile& u_prev, const SolverConfig& cfg) {
  SolverConfig cn = cfg;
  cn.integrator = Integrator::CrankNicolson;
  return solve_step_1d(u_prev, cn);
}

EvolveResult evolve_1d(const Profile& u0, const SolverConfig& cfg, const EvolveOptions& opts) {
  if (u0.kind != ProfileKind::InverseCdf1D) throw DomainError("evolve_1d needs a 1D profile");
  return detail::evolve(u0, cfg, opts, solve_step_1d);
}

}  // namespace condensate
