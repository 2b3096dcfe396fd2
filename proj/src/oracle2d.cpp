#include "condensate/oracle2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <gsl/gsl_sf_bessel.h>

#include "condensate/error.hpp"
#include "condensate/quadrature.hpp"

namespace condensate {

namespace {

constexpr std::size_t kChebyshevNodes = 24;
// Gaussian window of the kernel in units of sqrt(b): e^{-50} is below 1e-21.
constexpr double kKernelWidths = 10.0;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

double clenshaw(const std::vector<double>& c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = c.size(); j-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

std::vector<double> chebyshev_coefficients(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      s += samples[k] * std::cos(std::numbers::pi * static_cast<double>(j) *
                                 (static_cast<double>(k) + 0.5) / static_cast<double>(n));
    }
    c[j] = 2.0 * s / static_cast<double>(n);
  }
  c[0] *= 0.5;
  return c;
}

// Antiderivative on [-1, 1] vanishing at -1, scaled by the panel half width.
std::vector<double> chebyshev_integral(const std::vector<double>& a, double half) {
  const std::size_t n = a.size();
  std::vector<double> c(n + 1, 0.0);
  auto at = [&](std::size_t j) { return j < n ? a[j] : 0.0; };
  c[1] = at(0) - 0.5 * at(2);
  for (std::size_t k = 2; k <= n; ++k) {
    c[k] = (at(k - 1) - at(k + 1)) / (2.0 * static_cast<double>(k));
  }
  double at_minus_one = 0.0;
  for (std::size_t k = 1; k <= n; ++k) at_minus_one += (k % 2 ? -1.0 : 1.0) * c[k];
  c[0] = -at_minus_one;
  for (double& x : c) x *= half;
  return c;
}

}  // namespace

double choose_r1(double tol) {
  require(tol > 0.0, "tol must be positive");
  return std::sqrt(2.0 * std::log1p(1.0 / tol));
}

void Oracle2DConfig::validate() const {
  require(amp > 0.0, "amp must be positive");
  require(sigma > 0.0, "sigma must be positive");
  require(r1 > 0.0, "r1 must be positive");
  require(quad_tol > 0.0, "quad_tol must be positive");
  require(trunc_radius >= 0.0, "trunc_radius must be nonnegative");
}

double Oracle2DConfig::truncation() const {
  if (trunc_radius > 0.0) return trunc_radius;
  // h0 <= A e^{A sigma^2} e^{-r^2 / 2 sigma^2}
  return sigma * std::sqrt(2.0 * (amp * sigma * sigma + 14.0 * std::log(10.0)));
}

double Oracle2DConfig::initial_mass() const {
  return amp * sigma * sigma * -std::expm1(-r1 * r1 / (2.0 * sigma * sigma));
}

double h0_from_gaussian(const Oracle2DConfig& cfg, double rho) {
  require(rho >= 0.0, "rho must be nonnegative");
  const double e = std::exp(-rho * rho / (2.0 * cfg.sigma * cfg.sigma));
  return cfg.amp * e * std::exp(cfg.amp * cfg.sigma * cfg.sigma * (1.0 - e));
}

double heat_kernel(double b, double z_abs) {
  require(b > 0.0, "kernel width must be positive");
  return std::exp(-z_abs * z_abs / (2.0 * b)) / (2.0 * std::numbers::pi * b);
}

double linear_fp_solution(const Oracle2DConfig& cfg, double t, double rho) {
  require(t > 0.0, "linear_fp_solution requires t > 0");
  require(rho >= 0.0, "rho must be nonnegative");
  const double b = kernel_b(t);
  const double x = rho / std::sqrt(kernel_a(t));
  const double w = std::sqrt(b);
  const double lo = std::max(0.0, x - kKernelWidths * w);
  const double hi = std::min(cfg.truncation(), x + kKernelWidths * w);
  if (!(lo < hi)) return 0.0;

  // Angular integral of the 2D kernel: 2 pi I_0(x r / b), scaled by e^{-x r / b}.
  auto integrand = [&](double r) {
    const double d = x - r;
    return std::exp(-d * d / (2.0 * b)) * gsl_sf_bessel_I0_scaled(x * r / b) *
           h0_from_gaussian(cfg, r) * r / b;
  };
  std::vector<double> pts{lo};
  for (double k : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
    const double p = x + k * w;
    if (p > pts.back() && p < hi) pts.push_back(p);
  }
  pts.push_back(hi);
  return quad::integrate_pieces(integrand, pts, cfg.quad_tol) / kernel_a(t);
}

double exact_kq_density(const Oracle2DConfig& cfg, double t, double rho) {
  const double h = linear_fp_solution(cfg, t, rho);
  if (rho == 0.0) return h;
  const double mass = quad::integrate(
      [&](double r) { return r * linear_fp_solution(cfg, t, r); }, 0.0, rho, cfg.quad_tol);
  return h / (1.0 + mass);
}

ExactSolution2D::ExactSolution2D(const Oracle2DConfig& cfg, double t, std::size_t panels)
    : cfg_(cfg), t_(t) {
  cfg_.validate();
  require(t >= 0.0, "time must be nonnegative");
  require(panels >= 1, "at least one panel is required");
  auto h = [&](double r) { return t == 0.0 ? h0_from_gaussian(cfg_, r) : linear_fp_solution(cfg_, t, r); };

  const double width = cfg_.r1 / static_cast<double>(panels);
  double base = 0.0;
  panels_.resize(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    Panel& pan = panels_[p];
    pan.lo = width * static_cast<double>(p);
    pan.hi = p + 1 == panels ? cfg_.r1 : width * static_cast<double>(p + 1);
    pan.base = base;
    const double mid = 0.5 * (pan.lo + pan.hi);
    const double half = 0.5 * (pan.hi - pan.lo);
    std::vector<double> hs(kChebyshevNodes), hr(kChebyshevNodes);
    for (std::size_t k = 0; k < kChebyshevNodes; ++k) {
      const double x = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.5) /
                                static_cast<double>(kChebyshevNodes));
      const double r = mid + half * x;
      hs[k] = h(r);
      hr[k] = hs[k] * r;
    }
    pan.coef = chebyshev_coefficients(hs);
    pan.integral = chebyshev_integral(chebyshev_coefficients(hr), half);
    base += clenshaw(pan.integral, 1.0);
  }
  // f conserves A sigma^2 on the whole plane.
  tail_ = std::max(0.0, cfg_.amp * cfg_.sigma * cfg_.sigma - std::log1p(base));
}

const ExactSolution2D::Panel& ExactSolution2D::panel_for(double rho) const {
  require(rho >= 0.0 && rho <= cfg_.r1 * (1.0 + 1e-14), "rho outside [0, r1]");
  const double width = cfg_.r1 / static_cast<double>(panels_.size());
  const auto k = std::min(panels_.size() - 1, static_cast<std::size_t>(rho / width));
  return panels_[k];
}

double ExactSolution2D::h_lin(double rho) const {
  const Panel& p = panel_for(rho);
  const double x = (2.0 * rho - p.lo - p.hi) / (p.hi - p.lo);
  return clenshaw(p.coef, std::clamp(x, -1.0, 1.0));
}

double ExactSolution2D::partial_mass_h(double rho) const {
  if (rho <= 0.0) return 0.0;
  const Panel& p = panel_for(rho);
  const double x = (2.0 * rho - p.lo - p.hi) / (p.hi - p.lo);
  return p.base + clenshaw(p.integral, std::clamp(x, -1.0, 1.0));
}

double ExactSolution2D::density(double rho) const {
  return h_lin(rho) / (1.0 + partial_mass_h(rho));
}

double ExactSolution2D::partial_mass_f(double rho) const {
  return std::log1p(partial_mass_h(rho));
}

Profile exact_profile(const ExactSolution2D& solution, const Grid& grid) {
  const double r1 = solution.config().r1;
  Profile p;
  p.kind = ProfileKind::RadialNormalized;
  p.grid = grid;
  p.params = solution.config().params();
  const std::size_t n = grid.n_points();
  p.values.assign(n, 0.0);
  const double inside = solution.partial_mass_f(r1);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double z = grid.node(i);
    if (z >= inside) {
      p.values[i] = r1 * r1;
      continue;
    }
    auto residual = [&](double rho) { return solution.partial_mass_f(rho) - z; };
    std::uintmax_t max_iter = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(
        residual, 0.0, r1, -z, inside - z, boost::math::tools::eps_tolerance<double>(52),
        max_iter);
    const double rho = 0.5 * (lo + hi);
    p.values[i] = rho * rho;
  }
  p.values.back() = r1 * r1;
  return p;
}

Profile exact_profile(const Oracle2DConfig& cfg, double t, const Grid& grid) {
  return exact_profile(ExactSolution2D(cfg, t), grid);
}

}  // namespace condensate
