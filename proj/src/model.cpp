#include "condensate/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "condensate/error.hpp"
#include "condensate/quadrature.hpp"

namespace condensate {

namespace {

// Splitting radius for the singular critical profile, relative to R1.
constexpr double kInnerFraction = 1e-3;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

double weight(double r, int dim) { return dim == 1 ? 1.0 : std::pow(r, dim - 1); }

// f_theta(r) without argument checks; stable for large exponents.
double density_unchecked(double theta, double gamma, double r) {
  const double x = 0.5 * r * r + theta;
  if (gamma * x > 1.0) {
    return std::exp(-x) * std::pow(-std::expm1(-gamma * x), -1.0 / gamma);
  }
  return std::pow(std::expm1(gamma * x), -1.0 / gamma);
}

double leading_coefficient(double gamma) { return std::pow(2.0 / gamma, 1.0 / gamma); }

// int_a^b f_theta(r) r^(dim-1) dr for 0 <= a <= b <= R1.
double radial_integral(double theta, const ModelParams& p, double a, double b, double tol) {
  if (b <= a) return 0.0;
  const double gamma = p.gamma;
  const int dim = p.dim;
  auto integrand = [&](double r) { return density_unchecked(theta, gamma, r) * weight(r, dim); };

  double sum = 0.0;
  double start = a;
  if (theta == 0.0) {
    const double r0 = kInnerFraction * p.r1;
    if (a < r0) {
      // Inner piece: analytic leading term c r^(-2/gamma) plus a bounded remainder.
      const double c = leading_coefficient(gamma);
      const double q = dim - 2.0 / gamma;
      const double top = std::min(b, r0);
      sum += c * (std::pow(top, q) - std::pow(a, q)) / q;
      // f_c(r) = c r^(-2/g) (expm1(x)/x)^(-1/g) with x = g r^2/2; the
      // remainder is formed without cancellation.
      auto remainder = [&](double r) {
        if (r == 0.0) return 0.0;
        const double x = 0.5 * gamma * r * r;
        const double y = x < 1e-4 ? x * (0.5 + x * (1.0 / 6.0 + x / 24.0)) : std::expm1(x) / x - 1.0;
        return c * std::pow(r, -2.0 / gamma) * std::expm1(-std::log1p(y) / gamma) * weight(r, dim);
      };
      sum += quad::integrate(remainder, a, top, 0.25 * tol);
      start = top;
    }
  }
  if (b <= start) return sum;

  // Geometric breakpoints resolve the peak of f_theta near the origin.
  std::vector<double> pts{start};
  const double scale = theta > 0.0 ? std::sqrt(theta) : 0.0;
  std::vector<double> cand;
  for (int j = 1; j <= 14; ++j) cand.push_back(b * std::pow(10.0, -j));
  if (scale > 0.0) {
    for (double s : {0.1, 0.3, 1.0, 3.0}) cand.push_back(s * scale);
  }
  std::sort(cand.begin(), cand.end());
  for (double c : cand) {
    if (c > start && c < b) pts.push_back(c);
  }
  pts.push_back(b);
  return sum + quad::integrate_pieces(integrand, pts, 0.75 * tol);
}

// L(f) = int_0^f log1p(s^gamma) ds, f <= 1.
double log1p_power_integral(double f, double gamma) {
  return quad::integrate([gamma](double s) { return std::log1p(std::pow(s, gamma)); }, 0.0, f,
                         0.5e-12);
}

}  // namespace

void ModelParams::validate() const {
  require(gamma > 0.0, "gamma must be positive");
  require(dim >= 1, "dim must be at least 1");
  require(r1 > 0.0, "r1 must be positive");
}

std::string ModelParams::solver_warning() const {
  if (dim == 1 && gamma <= 2.0) {
    return "gamma <= 2 in one dimension is not L1-supercritical; the scheme requires gamma > 2";
  }
  if (dim >= 2 && gamma != 1.0) {
    return "radial runs with gamma != 1 use the generic power-law diffusion and are experimental";
  }
  return {};
}

double steady_state_density(double theta, double gamma, double v_abs) {
  require(theta >= 0.0, "theta must be nonnegative");
  require(gamma > 0.0, "gamma must be positive");
  require(v_abs >= 0.0, "|v| must be nonnegative");
  if (theta == 0.0 && v_abs == 0.0) {
    throw DomainError("singular point: the critical profile diverges at the origin");
  }
  return density_unchecked(theta, gamma, v_abs);
}

double shell_mass(double theta, const ModelParams& params, double lo, double hi, double abs_tol) {
  params.validate();
  require(theta >= 0.0, "theta must be nonnegative");
  require(lo >= 0.0 && lo <= hi && hi <= params.r1 * (1.0 + 1e-14), "shell outside [0, R1]");
  if (theta == 0.0 && params.gamma <= 2.0 / params.dim && lo == 0.0) {
    throw DomainError("critical profile is not integrable at the origin for gamma <= 2/d");
  }
  const double factor = params.dim == 1 ? 2.0 : 1.0;
  return factor * radial_integral(theta, params, lo, std::min(hi, params.r1), abs_tol / factor);
}

double mass_between(double theta, const ModelParams& params, double lo, double hi, double abs_tol) {
  if (params.dim != 1) return shell_mass(theta, params, lo, hi, abs_tol);
  params.validate();
  require(lo <= hi, "mass_between requires lo <= hi");
  if (lo >= 0.0) return radial_integral(theta, params, lo, hi, abs_tol);
  if (hi <= 0.0) return radial_integral(theta, params, -hi, -lo, abs_tol);
  return radial_integral(theta, params, 0.0, -lo, 0.5 * abs_tol) +
         radial_integral(theta, params, 0.0, hi, 0.5 * abs_tol);
}

double steady_state_mass(double theta, const ModelParams& params) {
  return shell_mass(theta, params, 0.0, params.r1);
}

CriticalMass critical_mass(const ModelParams& params) {
  params.validate();
  if (params.gamma <= 2.0 / params.dim) return CriticalMass::infinite();
  return CriticalMass::finite(steady_state_mass(0.0, params));
}

double theta_for_mass(double mass, const ModelParams& params) {
  params.validate();
  require(mass > 0.0, "mass must be positive");
  const CriticalMass mc = critical_mass(params);
  if (!mc.is_infinite() && mass >= mc.value()) {
    throw SupercriticalMass("mass " + std::to_string(mass) + " is not below the critical mass " +
                            std::to_string(mc.value()));
  }
  const double tol = std::min(1e-12, 1e-3 * 1e-10 * mass);
  auto m_of = [&](double theta) { return shell_mass(theta, params, 0.0, params.r1, tol); };

  double hi = 1.0;
  while (m_of(hi) > mass) {
    hi *= 4.0;
    if (hi > 1e300) throw DomainError("mass too small to bracket theta");
  }
  double lo = std::min(1.0, hi);
  while (m_of(lo) < mass) {
    lo /= 16.0;
    if (lo < 1e-300) throw SupercriticalMass("mass indistinguishable from the critical mass");
  }
  // m(lo) >= mass >= m(hi); bisect in log(theta).
  for (int it = 0; it < 400; ++it) {
    const double mid = std::sqrt(lo * hi);
    const double m = m_of(mid);
    if (std::abs(m - mass) < 1e-10 * mass * 1e-2 || hi / lo - 1.0 < 1e-15) return mid;
    (m > mass ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

MinimizerSpec entropy_minimizer(double mass, const ModelParams& params) {
  params.validate();
  require(mass > 0.0, "mass must be positive");
  MinimizerSpec spec;
  spec.params = params;
  spec.total_mass = mass;
  const CriticalMass mc = critical_mass(params);
  if (!mc.is_infinite() && mass >= mc.value()) {
    spec.theta = 0.0;
    spec.dirac_mass = mass - mc.value();
  } else {
    spec.theta = theta_for_mass(mass, params);
    spec.dirac_mass = 0.0;
  }
  return spec;
}

double phi(double f, double gamma) {
  require(f >= 0.0, "phi requires f >= 0");
  if (f == 0.0) return 0.0;
  if (gamma == 1.0) {
    if (f <= 1.0) return f * std::log(f) - (1.0 + f) * std::log1p(f);
    return -f * std::log1p(1.0 / f) - std::log1p(f);
  }
  if (f <= 1.0) return f * std::log(f) - f - log1p_power_integral(f, gamma) / gamma;
  // f > 1: Phi(f) = Phi(1) - (1/gamma) int_{1/f}^1 log1p(t^gamma) / t^2 dt.
  const double tail = quad::integrate(
      [gamma](double t) { return std::log1p(std::pow(t, gamma)) / (t * t); }, 1.0 / f, 1.0,
      0.5e-12);
  return -1.0 - (log1p_power_integral(1.0, gamma) + tail) / gamma;
}

double phi_prime(double f, double gamma) {
  require(f > 0.0, "phi' requires f > 0");
  return std::log(f) - std::log1p(std::pow(f, gamma)) / gamma;
}

double psi(double s, double gamma, int dim) {
  require(s >= 0.0, "psi requires s >= 0");
  if (s == 0.0) return 0.0;
  const double x = s / dim;
  // gamma = 1: x Phi(1/x) = x log x - (1 + x) log(1 + x), i.e. Phi itself.
  if (gamma == 1.0) return phi(x, 1.0);
  if (!std::isfinite(1.0 / x)) return 0.0;
  return x * phi(1.0 / x, gamma);
}

double psi_prime(double s, double gamma, int dim) {
  require(s > 0.0, "psi' requires s > 0");
  const double x = s / dim;
  return (phi(1.0 / x, gamma) - phi_prime(1.0 / x, gamma) / x) / dim;
}

double psi_second(double s, double gamma, int dim) {
  require(s > 0.0, "psi'' requires s > 0");
  const double x = s / dim;
  return 1.0 / (x * x * x * mob(1.0 / x, gamma)) / (dim * dim);
}

}  // namespace condensate
