#include "condensate/solver_radial.hpp"

#include <cmath>

#include "condensate/error.hpp"
#include "evolve_driver.hpp"
#include "newton.hpp"

namespace condensate {

namespace {

struct Slope {
  double value;
  double sign;
};

Slope effective(double diff, bool abs_slope) {
  if (abs_slope) return {std::abs(diff), diff >= 0.0 ? 1.0 : -1.0};
  return diff > 0.0 ? Slope{diff, 1.0} : Slope{0.0, 0.0};
}

// Diffusion flux value phi(q) and phi'(q) for q = slope/h + eps:
// log(q) when gamma = 1, q^(gamma-1)/(gamma-1) otherwise.
struct Flux {
  double value;
  double deriv;  // with respect to the raw difference
};

Flux flux(const Slope& s, double h, double eps, double gamma) {
  const double q = s.value / h + eps;
  if (gamma == 1.0) {
    if (!(q > 0.0)) {
      throw LogSingularity("log of a vanishing slope: set eps > 0 for degenerate profiles");
    }
    return {std::log(q), s.sign / (h * q)};
  }
  const double p = std::pow(q, gamma - 1.0);
  return {p / (gamma - 1.0), s.sign * p / (q * h)};
}

struct Terms {
  double time;   // time-derivative term
  double rest;   // -diffusion + drift
};

// Row i of the discrete system for array x against previous level `prev`;
// optionally the partial derivatives (lower, diag, upper) of the rest and
// time parts.
struct Row {
  Terms terms;
  double d_time[3];
  double d_rest[3];
  double d_time_prefactor;  // cg / (d tau), the time term per unit S_i - S_prev_i
};

Row row(std::span<const double> x, std::span<const double> prev, std::size_t i,
        const SolverConfig& cfg, bool derivs) {
  const double gamma = cfg.params.gamma;
  const int d = cfg.params.dim;
  const double dd = d;
  const double h = cfg.grid.spacing();
  const double tau = cfg.tau;
  const double eps = cfg.eps_reg;
  const double delta = cfg.delta_reg;
  const bool abs_slope = cfg.abs_slope;
  const double q = 2.0 - 2.0 / dd;

  const Slope c = effective(x[i + 1] - x[i - 1], abs_slope);
  const Slope pf = effective(x[i + 1] - x[i], abs_slope);
  const Slope mb = effective(x[i] - x[i - 1], abs_slope);
  const double chalf = c.value / (2.0 * h);
  const double cg = gamma == 1.0 ? chalf : std::pow(chalf, gamma);
  const double dcg = gamma == 1.0 ? 1.0 : (chalf > 0.0 ? gamma * cg / chalf : 0.0);  // d cg / d chalf
  const double base = std::max(x[i] + delta, 0.0);
  const double wgt = dd * std::pow(base, q);
  const double dgamma = gamma == 1.0 ? dd : std::pow(dd, gamma);

  const double dt = (x[i] - prev[i]) / (dd * tau);
  const double drift = x[i] * (cg + dgamma);

  Row r{};
  const Flux fp = flux(pf, h, eps, gamma);
  const Flux fm = flux(mb, h, eps, gamma);
  const double diff = (fp.value - fm.value) / h;
  r.terms.time = cg * dt;
  r.terms.rest = -wgt * diff + drift;
  r.d_time_prefactor = cg / (dd * tau);
  if (!derivs) return r;

  const double dcg_side = dcg * c.sign / (2.0 * h);  // d cg / d x[i+1]
  r.d_time[0] = -dcg_side * dt;
  r.d_time[1] = cg / (dd * tau);
  r.d_time[2] = dcg_side * dt;
  const double dwgt = dd * q * std::pow(base, q - 1.0);
  // diff = (F(x[i+1]-x[i]) - F(x[i]-x[i-1])) / h
  const double ddiff_up = fp.deriv / h;
  const double ddiff_low = fm.deriv / h;
  const double ddiff_mid = -(fp.deriv + fm.deriv) / h;
  r.d_rest[0] = -wgt * ddiff_low - x[i] * dcg_side;
  r.d_rest[1] = -dwgt * diff - wgt * ddiff_mid + (cg + dgamma);
  r.d_rest[2] = -wgt * ddiff_up + x[i] * dcg_side;
  return r;
}

void check_inputs(std::span<const double> s, std::span<const double> prev,
                  const SolverConfig& cfg) {
  if (s.size() != prev.size() || s.size() != cfg.grid.n_points()) {
    throw DomainError("profile arrays do not match the grid");
  }
  if (cfg.params.dim < 2) throw DomainError("the radial scheme needs dim >= 2");
}

void assemble_radial(std::span<const double> s, std::span<const double> prev,
                     const SolverConfig& cfg, double* f, Tridiagonal* jac) {
  const double w = cfg.integrator == Integrator::CrankNicolson ? 0.5 : 1.0;
  const double wa = w != 1.0 && cfg.cn_prefactor == CnPrefactor::Average ? w : 1.0;
  const std::size_t n = s.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Row r = row(s, prev, i, cfg, jac != nullptr);
    const std::size_t k = i - 1;
    // Time term pref * dt with pref = wa cg(S) + (1 - wa) cg(S_prev).
    double time = r.terms.time;
    double diag_time = r.d_time[1];
    if (w != 1.0) {
      const Row old = row(prev, prev, i, cfg, false);
      if (wa != 1.0) {
        const double ratio = old.d_time_prefactor;
        time = wa * r.terms.time + (1.0 - wa) * ratio * (s[i] - prev[i]);
        diag_time = wa * r.d_time[1] + (1.0 - wa) * ratio;
      }
      if (f) f[k] = time + w * r.terms.rest + (1.0 - w) * old.terms.rest;
    } else if (f) {
      f[k] = time + r.terms.rest;
    }
    if (jac) {
      jac->diag[k] = diag_time + w * r.d_rest[1];
      if (k > 0) jac->lower[k] = wa * r.d_time[0] + w * r.d_rest[0];
      if (k + 1 < jac->size()) jac->upper[k] = wa * r.d_time[2] + w * r.d_rest[2];
    }
  }
}

std::pair<Profile, StepReport> step_impl(const Profile& prev, const SolverConfig& cfg) {
  check_inputs(prev.values, prev.values, cfg);
  std::vector<double> s = prev.values;
  auto assemble = [&](const std::vector<double>& x, std::vector<double>& f, Tridiagonal& j) {
    assemble_radial(x, prev.values, cfg, f.data(), &j);
  };
  // The stopping test uses the residual times h^gamma as in 1D; unscaled,
  // its rounding floor sits above the tolerance on fine grids.
  const double scale = std::pow(cfg.grid.spacing(), cfg.params.gamma);
  const StepReport report =
      detail::newton_solve(s, cfg, assemble, scale);
  Profile out = prev;
  out.values = std::move(s);
  return {std::move(out), report};
}

}  // namespace

std::vector<double> residual_radial(std::span<const double> s, std::span<const double> s_prev,
                                    const SolverConfig& cfg) {
  check_inputs(s, s_prev, cfg);
  std::vector<double> f(s.size() - 2);
  assemble_radial(s, s_prev, cfg, f.data(), nullptr);
  return f;
}

Tridiagonal jacobian_radial(std::span<const double> s, std::span<const double> s_prev,
                            const SolverConfig& cfg) {
  check_inputs(s, s_prev, cfg);
  Tridiagonal j(s.size() - 2);
  assemble_radial(s, s_prev, cfg, nullptr, &j);
  return j;
}

std::pair<Profile, StepReport> solve_step_radial_profile(const Profile& prev,
                                                         const SolverConfig& cfg) {
  return detail::step_with_retry(prev, cfg, step_impl);
}

std::pair<RadialState, StepReport> solve_step_radial(const RadialState& prev,
                                                     const SolverConfig& cfg) {
  auto [p, rep] = solve_step_radial_profile(prev.profile, cfg);
  return {RadialState{std::move(p), prev.time + cfg.tau}, rep};
}

EvolveResult evolve_radial(const Profile& s0, const SolverConfig& cfg, const EvolveOptions& opts) {
  if (s0.kind != ProfileKind::RadialNormalized) {
    throw DomainError("evolve_radial needs a radial profile");
  }
  return detail::evolve(s0, cfg, opts, solve_step_radial_profile);
}

}  // namespace condensate
