#pragma once

// Adaptive quadrature used by the model, transform and oracle modules.
//
// The 31-point Kronrod rule comes from Boost.Math; refinement is driven here
// with an absolute tolerance split evenly across bisections, so a request for
// 1e-12 means 1e-12 on the whole interval. If the error estimate cannot be
// met within the depth or split limits, the result falls back to composite
// Simpson.

#include <cmath>
#include <cstddef>
#include <span>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace condensate::quad {

inline constexpr double kDefaultAbsTol = 1e-12;
inline constexpr unsigned kMaxDepth = 30;
inline constexpr std::size_t kMaxSplits = 4000;
inline constexpr std::size_t kSimpsonPanels = std::size_t{1} << 16;

/// Composite Simpson rule with `panels` (even) subintervals.
template <class F>
double simpson(F&& f, double a, double b, std::size_t panels = kSimpsonPanels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double sum = f(a) + f(b);
  for (std::size_t k = 1; k < panels; ++k) {
    sum += f(a + h * static_cast<double>(k)) * (k % 2 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

namespace detail {

// Kronrod estimate on [a, b] with err = |K - G|. The node and weight tables
// come from Boost; the error is scaled to [a, b] here (the packaged
// non-adaptive path reports it on the reference interval).
template <class F>
double kronrod31(F& f, double a, double b, double& err) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
  using Gauss = boost::math::quadrature::gauss<double, 15>;
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double f0 = f(mid);
  double k = f0 * wk[0];
  double g = f0 * wg[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double s = f(mid + half * x[i]) + f(mid - half * x[i]);
    k += s * wk[i];
    if (i % 2 == 0) g += s * wg[i / 2];
  }
  err = std::abs(k - g) * half;
  return k * half;
}

// Error estimates bottom out near a few ulps of the integral, so a piece is
// also accepted once its estimate is at that level.
inline constexpr double kRelativeFloor = 1e-14;

template <class F>
double adapt(F& f, double a, double b, double tol, unsigned depth, std::size_t& budget, bool& ok) {
  double err = 0.0;
  const double est = kronrod31(f, a, b, err);
  if (err <= tol || err <= kRelativeFloor * std::abs(est)) return est;
  if (depth == 0 || budget == 0) {
    ok = false;
    return est;
  }
  --budget;
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth - 1, budget, ok) +
         adapt(f, mid, b, 0.5 * tol, depth - 1, budget, ok);
}

}  // namespace detail

struct Result {
  double value = 0.0;
  bool converged = true;
};

/// Integral of f over [a, b] to absolute tolerance `abs_tol`; reports whether
/// the adaptive estimate met the tolerance.
template <class F>
Result integrate_checked(F&& f, double a, double b, double abs_tol = kDefaultAbsTol) {
  if (a == b) return {};
  if (b < a) {
    auto r = integrate_checked(f, b, a, abs_tol);
    r.value = -r.value;
    return r;
  }
  bool ok = true;
  std::size_t budget = kMaxSplits;
  const double v = detail::adapt(f, a, b, abs_tol, kMaxDepth, budget, ok);
  return {v, ok};
}

/// As integrate_checked, falling back to composite Simpson on failure.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = kDefaultAbsTol) {
  const auto r = integrate_checked(f, a, b, abs_tol);
  if (r.converged) return r.value;
  const double s = simpson(f, a, b);
  return std::isfinite(s) ? s : r.value;
}

/// Sum of integrals over consecutive breakpoints; tolerance shared equally.
template <class F>
double integrate_pieces(F&& f, std::span<const double> points, double abs_tol = kDefaultAbsTol) {
  if (points.size() < 2) return 0.0;
  const double piece_tol = abs_tol / static_cast<double>(points.size() - 1);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    sum += integrate(f, points[k], points[k + 1], piece_tol);
  }
  return sum;
}

}  // namespace condensate::quad
