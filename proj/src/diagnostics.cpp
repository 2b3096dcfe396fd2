#include "condensate/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "condensate/error.hpp"
#include "condensate/model.hpp"
#include "condensate/solver_config.hpp"

namespace condensate {

namespace {

constexpr std::size_t kFitSkipNodes = 3;

double potential_term(double slope, double gamma, int dim) {
  return slope > 0.0 ? psi(slope, gamma, dim) : 0.0;
}

}  // namespace

double entropy_1d(const Profile& u) {
  const auto& x = u.values;
  const double h = u.grid.spacing();
  const double gamma = u.params.gamma;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double kinetic = 0.25 * (x[i] * x[i] + x[i + 1] * x[i + 1]);
    sum += h * (kinetic + potential_term((x[i + 1] - x[i]) / h, gamma, 1));
  }
  return sum;
}

double entropy_radial(const Profile& s) {
  const auto& x = s.values;
  const double h = s.grid.spacing();
  const double gamma = s.params.gamma;
  const int d = s.dim();
  const double power = 2.0 / d;
  double sum = 0.0;
  double left = std::pow(std::max(x[0], 0.0), power);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double right = std::pow(std::max(x[i + 1], 0.0), power);
    sum += h * (0.25 * (left + right) + potential_term((x[i + 1] - x[i]) / h, gamma, d));
    left = right;
  }
  return sum;
}

double entropy(const Profile& profile) {
  return profile.kind == ProfileKind::InverseCdf1D ? entropy_1d(profile) : entropy_radial(profile);
}

double condensate_size(const Profile& profile, double threshold) {
  const auto& x = profile.values;
  std::size_t count = 0;
  const bool one_d = profile.kind == ProfileKind::InverseCdf1D;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const double level = one_d ? std::abs(x[i]) : x[i];
    if (level < threshold) ++count;
  }
  // Length of the flat segment: in 1D the k nodes span k - 1 cells, radially
  // the pinned node S_0 = 0 closes the segment.
  if (one_d && count > 0) --count;
  return profile.grid.spacing() * static_cast<double>(count);
}

double decay_rate(const TraceSet& trace, double t1, double t2) {
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::size_t n = 0;
  for (const auto& [t, h] : trace.entropy) {
    if (t < t1 || t > t2) continue;
    const double rel = h - trace.h_infinity;
    if (!(rel > 0.0)) throw DomainError("window invalid: nonpositive relative entropy");
    const double y = std::log(rel);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    ++n;
  }
  if (n < 2) throw DomainError("window invalid: fewer than two entropy samples");
  const double dn = static_cast<double>(n);
  const double denom = dn * stt - st * st;
  if (!(denom > 0.0)) throw DomainError("window invalid: degenerate sample times");
  return -(dn * sty - st * sy) / denom;
}

ProfileModel default_profile_model(int dim) {
  return dim == 1 ? ProfileModel::Difference : ProfileModel::Ratio;
}

ProfileFit blowup_profile_fit(const Profile& profile, double v_min, double v_max) {
  return blowup_profile_fit(profile, v_min, v_max, default_profile_model(profile.dim()));
}

ProfileFit blowup_profile_fit(const Profile& profile, double v_min, double v_max,
                              ProfileModel model) {
  const auto& x = profile.values;
  const std::size_t n = x.size();
  const double h = profile.grid.spacing();
  const int d = profile.dim();
  const bool one_d = d == 1;
  const double gamma = profile.params.gamma;
  const double threshold = SolverConfig::default_threshold(d);

  std::vector<bool> near_flat(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const double level = one_d ? std::abs(x[i]) : x[i];
    if (level >= threshold) continue;
    const std::size_t lo = i >= kFitSkipNodes ? i - kFitSkipNodes : 0;
    const std::size_t hi = std::min(n - 1, i + kFitSkipNodes);
    for (std::size_t k = lo; k <= hi; ++k) near_flat[k] = true;
  }

  // Samples (v, y) for the model y = c v.
  std::vector<double> vs, ys;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (near_flat[i]) continue;
    const double dc = x[i + 1] - x[i - 1];
    if (!(dc > 0.0)) continue;
    const double v = one_d ? std::abs(x[i]) : std::pow(std::max(x[i], 0.0), 1.0 / d);
    if (v < v_min || v > v_max || v <= 0.0) continue;
    const double f = d * 2.0 * h / dc;
    const double fc = critical_density(gamma, v);
    vs.push_back(v);
    ys.push_back(model == ProfileModel::Ratio ? f / fc - 1.0 : f - fc);
  }
  if (vs.size() < 5) throw DomainError("insufficient samples for the blow-up profile fit");

  double svv = 0.0, svy = 0.0, ymean = 0.0;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    svv += vs[k] * vs[k];
    svy += vs[k] * ys[k];
    ymean += ys[k];
  }
  ymean /= static_cast<double>(vs.size());
  const double c = svy / svv;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const double r = ys[k] - c * vs[k];
    ss_res += r * r;
    ss_tot += (ys[k] - ymean) * (ys[k] - ymean);
  }
  ProfileFit fit;
  fit.model = model;
  fit.c_tilde = c;
  fit.samples = vs.size();
  if (ss_tot > 0.0) {
    fit.r_squared = 1.0 - ss_res / ss_tot;
  } else {
    fit.r_squared = ss_res <= 1e-24 * static_cast<double>(vs.size()) ? 1.0 : 0.0;
  }
  return fit;
}

}  // namespace condensate
