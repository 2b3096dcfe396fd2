// Acceptance checks, one PASS/FAIL line per criterion.
//
//   acceptance [criterion ...]     criterion names c1 ... c10; none runs all

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "condensate/diagnostics.hpp"
#include "condensate/error.hpp"
#include "condensate/harness.hpp"
#include "condensate/model.hpp"
#include "condensate/oracle2d.hpp"
#include "condensate/quadrature.hpp"
#include "condensate/solver1d.hpp"
#include "condensate/solver_radial.hpp"
#include "condensate/transform.hpp"

using namespace condensate;

namespace {

struct Run {
  EvolveResult result;
  std::size_t invalid_profiles = 0;
  double seconds = 0.0;
};

// Runs keyed by name, each computed once.
std::map<std::string, Run> cache;

const Run& run(const std::string& key, const Preset& p, std::vector<double> snapshots = {}) {
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Run r;
  EvolveOptions opts;
  opts.snapshot_times = std::move(snapshots);
  opts.on_step = [&](std::size_t, double, const Profile& u, const StepReport&) {
    if (!u.is_valid()) ++r.invalid_profiles;
  };
  const auto t0 = std::chrono::steady_clock::now();
  r.result = evolve(initial_profile(p), p.config, opts);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("  [run %s: %zu steps, %.1f s]\n", key.c_str(), r.result.trace.steps, r.seconds);
  return cache.emplace(key, std::move(r)).first->second;
}

Preset val2d_entropy_preset() {
  Preset p = preset(PresetId::VAL2D_A);
  p.config.grid = Grid(401, p.config.grid.mass_total());
  p.config.tau = 1e-4;
  p.config.t_final = 0.2;
  return p;
}

Preset p7(double delta) {
  Preset p = preset(PresetId::P7);
  p.config.delta_reg = delta;
  return p;
}

std::optional<double> onset(const TraceSet& tr) {
  for (const auto& e : tr.condensate)
    if (e.value > 0.0) return e.t;
  return std::nullopt;
}

double max_condensate(const TraceSet& tr) {
  double m = 0.0;
  for (const auto& e : tr.condensate) m = std::max(m, e.value);
  return m;
}

bool within(double x, double lo, double hi) { return x >= lo && x <= hi; }

void print_rates(const char* label, const ConvergenceReport& r) {
  std::printf("  %s:", label);
  for (const auto& row : r.rows) {
    std::printf(" %.3e", row.error);
    if (row.rate) std::printf(" (%.3f)", *row.rate);
    if (!row.failure.empty()) std::printf(" [%s]", row.failure.c_str());
  }
  std::printf("\n");
}

bool all_within(const std::vector<double>& rates, double lo, double hi) {
  return !rates.empty() && std::all_of(rates.begin(), rates.end(),
                                       [&](double r) { return within(r, lo, hi); });
}

// 1. Critical masses.
bool c1() {
  const double a = critical_mass({2.9, 1, 1.0}).value();
  const double b = critical_mass({1.0, 3, 1.0}).value();
  std::printf("  m_c(gamma=2.9, d=1) = %.6f (reference 5.37), m_c(gamma=1, d=3) = %.6f (reference 1.84)\n",
              a, b);
  return std::abs(a - 5.37) <= 0.01 && std::abs(b - 1.84) <= 0.01;
}

// 2. 1D self-convergence at reduced scale.
bool c2() {
  SelfConvergenceOptions o;
  o.reference_points = 3201;
  o.reference_steps = 500;
  o.final_steps = 500;
  SolverConfig be = preset(PresetId::VAL1D).config;
  be.t_final = 0.025;
  const InitialDatum p1 = preset(PresetId::VAL1D).datum;
  SolverConfig cn = preset(PresetId::P3).config;
  cn.t_final = 0.025;
  cn.integrator = Integrator::CrankNicolson;

  const auto fin = self_convergence_1d(be, p1, 4, ErrorMode::FinalTimeL2, o);
  const auto st = self_convergence_1d(be, p1, 4, ErrorMode::SpaceTimeL2, o);
  const auto crank = self_convergence_1d(cn, preset(PresetId::P3).datum, 4, ErrorMode::SpaceTimeL2, o);
  print_rates("final time", fin);
  print_rates("space-time", st);
  print_rates("CN space-time (P3)", crank);
  return fin.complete() && st.complete() && crank.complete() &&
         all_within(fin.rates(), 1.75, 2.25) && all_within(st.rates(), 0.85, 1.30) &&
         all_within(crank.rates(), 1.9, 2.3);
}

// 3. 2D convergence against the exact solution.
bool c3() {
  const auto fin = exact_convergence_2d(4, ErrorMode::FinalTimeL2);
  const auto st = exact_convergence_2d(4, ErrorMode::SpaceTimeL2);
  print_rates("final time", fin);
  print_rates("space-time", st);
  if (fin.tail_mass) std::printf("  tail mass beyond R1 at T: %.3e\n", *fin.tail_mass);
  const auto fr = fin.rates();
  bool increasing = fr.size() == 3 && within(fr.front(), 1.3, 1.7);
  for (std::size_t j = 1; j < fr.size(); ++j) increasing = increasing && fr[j] > fr[j - 1];
  return fin.complete() && st.complete() && increasing && within(fr.back(), 1.7, 2.2) &&
         all_within(st.rates(), 0.95, 1.05);
}

// 4. Entropy decreases at every step.
bool c4() {
  struct Case {
    const char* name;
    std::function<const Run&()> get;
    bool gate;
  };
  const std::vector<Case> cases{
      {"P1", []() -> const Run& { return run("P1", preset(PresetId::P1), {0.1}); }, true},
      {"P3", []() -> const Run& { return run("P3", preset(PresetId::P3)); }, true},
      {"P4 (scaled)", []() -> const Run& { return run("P4s", scaled_preset(PresetId::P4)); }, true},
      {"d=2 (VAL2D datum)", []() -> const Run& { return run("D2", val2d_entropy_preset()); }, true},
      {"P5 (d=3, reported)", []() -> const Run& { return run("P5", preset(PresetId::P5)); }, false},
  };
  bool ok = true;
  for (const auto& c : cases) {
    const Run& r = c.get();
    const double inc = r.result.trace.max_entropy_increase;
    const bool pass = inc <= 1e-10;
    std::printf("  %-20s max H(n+1) - H(n) = %+.3e %s\n", c.name, inc, pass ? "ok" : "INCREASE");
    if (c.gate) ok = ok && pass;
  }
  return ok;
}

// 5. Condensation above the critical mass.
bool c5() {
  const auto a = onset(run("P1", preset(PresetId::P1), {0.1}).result.trace);
  const auto b = onset(run("P6s", scaled_preset(PresetId::P6), {0.1}).result.trace);
  std::printf("  P1 onset %s, scaled P6 onset %s\n",
              a ? std::to_string(*a).c_str() : "none", b ? std::to_string(*b).c_str() : "none");
  return a && *a < 0.025 && b && *b < 0.25;
}

// 6. Transient condensates.
bool c6() {
  const auto& p4 = run("P4s", scaled_preset(PresetId::P4)).result.trace;
  const auto& p7d = run("P7", p7(1e-10)).result.trace;
  const auto& p7z = run("P7z", p7(0.0)).result.trace;
  const double p4_end = p4.condensate.back().value;
  const double d_end = p7d.condensate.back().value;
  const double z_end = p7z.condensate.back().value;
  std::printf("  P4 (scaled): max x_p %.4g, x_p(T) %.4g\n", max_condensate(p4), p4_end);
  std::printf("  P7 delta=1e-10: max %.4g, final %.4g; delta=0: max %.4g, final %.4g\n",
              max_condensate(p7d), d_end, max_condensate(p7z), z_end);
  return max_condensate(p4) > 0.0 && p4_end == 0.0 && max_condensate(p7d) > 0.0 && d_end == 0.0 &&
         z_end > 0.0;
}

// 7. Entropy decay rates within 15%.
bool c7() {
  struct Case {
    const char* name;
    Preset p;
    const Run& r;
  };
  const Preset p1 = preset(PresetId::P1), p3 = preset(PresetId::P3),
               p4 = scaled_preset(PresetId::P4), p5 = preset(PresetId::P5), q7 = p7(1e-10);
  const std::vector<Case> cases{{"P1", p1, run("P1", p1, {0.1})},
                                {"P3", p3, run("P3", p3)},
                                {"P4 (scaled)", p4, run("P4s", p4)},
                                {"P5", p5, run("P5", p5)},
                                {"P7", q7, run("P7", q7)}};
  bool ok = true;
  for (const auto& c : cases) {
    const double alpha = decay_rate(c.r.result.trace, c.p.decay_window.first, c.p.decay_window.second);
    const double ref = *c.p.reference_alpha;
    const bool pass = std::abs(alpha - ref) <= 0.15 * ref;
    std::printf("  %-12s alpha = %.3f (reference %.1f, %+.1f%%) %s\n", c.name, alpha, ref,
                100.0 * (alpha / ref - 1.0), pass ? "ok" : "out of range");
    ok = ok && pass;
  }
  return ok;
}

// 8. Near-singularity profile, ratio model 1 + c|v|.
bool c8() {
  bool ok = true;
  for (const auto& [key, p] : {std::pair{std::string("P1"), preset(PresetId::P1)},
                               std::pair{std::string("P6s"), scaled_preset(PresetId::P6)}}) {
    const Run& r = run(key, p, {*p.fit_time});
    const Snapshot* snap = nullptr;
    for (const auto& s : r.result.trace.snapshots)
      if (std::abs(s.t - *p.fit_time) <= p.config.tau) snap = &s;
    if (!snap || condensate_size(snap->profile, p.config.condensate_threshold) <= 0.0) {
      std::printf("  %s: no condensate at t = %g\n", key.c_str(), *p.fit_time);
      ok = false;
      continue;
    }
    const auto [lo, hi] = p.profile_window;
    const ProfileFit ratio = blowup_profile_fit(snap->profile, lo, hi, ProfileModel::Ratio);
    const ProfileFit diff = blowup_profile_fit(snap->profile, lo, hi, ProfileModel::Difference);
    std::printf("  %s at t = %g, |v| in [%g, %g]: ratio r^2 = %.4f (c = %.4f); difference r^2 = %.4f (c = %.4f)\n",
                key.c_str(), snap->t, lo, hi, ratio.r_squared, ratio.c_tilde, diff.r_squared,
                diff.c_tilde);
    ok = ok && ratio.r_squared > 0.99;
  }
  return ok;
}

// 9. Long-time limit.
bool c9() {
  bool ok = true;
  for (const auto& [key, p] : {std::pair{std::string("P3"), preset(PresetId::P3)},
                               std::pair{std::string("P5"), preset(PresetId::P5)}}) {
    const Profile& u = run(key, p).result.final_profile;
    const Grid& g = u.grid;
    const Profile inf = minimizer_profile(entropy_minimizer(g.mass_total(), u.params), g);
    double s = 0.0;
    for (std::size_t i = 0; i < g.n_points(); ++i) {
      const double e = u.values[i] - inf.values[i];
      s += e * e;
    }
    const double dist = std::sqrt(g.spacing() * s);
    const double tol = 1e-3 * std::sqrt(g.mass_total());
    std::printf("  %s at T = %g: distance %.3e, tolerance %.3e\n", key.c_str(), p.config.t_final,
                dist, tol);
    ok = ok && dist <= tol;
  }
  return ok;
}

// 10. Property suites.
double max_jacobian_deviation(int dim, Integrator integrator, CnPrefactor pref) {
  const ModelParams params{dim == 1 ? 2.9 : 1.0, dim, 1.0};
  const DensityFn f = [](double v) { return 3.0 * std::exp(-v * v / 0.18); };
  const Grid g(11, density_mass(f, params, 10000));
  const Profile u = inverse_cdf_from_density(f, params, g);
  std::vector<double> prev = u.values;
  for (std::size_t i = 1; i + 1 < prev.size(); ++i) prev[i] *= 0.97;
  SolverConfig c;
  c.params = params;
  c.grid = g;
  c.tau = 1e-3;
  c.eps_reg = 1e-3;
  c.delta_reg = 1e-3;
  c.integrator = integrator;
  c.cn_prefactor = pref;
  auto residual = [&](const std::vector<double>& x) {
    return dim == 1 ? residual_1d(x, prev, c) : residual_radial(x, prev, c);
  };
  const Tridiagonal jac = dim == 1 ? jacobian_1d(u.values, prev, c) : jacobian_radial(u.values, prev, c);
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < u.values.size(); ++j) {
    auto xp = u.values, xm = u.values;
    const double e = 1e-6 * std::max(1.0, std::abs(u.values[j]));
    xp[j] += e;
    xm[j] -= e;
    const auto rp = residual(xp), rm = residual(xm);
    for (std::size_t i = 0; i < rp.size(); ++i) {
      const double fd = (rp[i] - rm[i]) / (2.0 * e);
      worst = std::max(worst, std::abs(fd - jac.at(i, j - 1)) / std::max(1.0, std::abs(fd)));
    }
  }
  return worst;
}

bool c10() {
  bool ok = true;
  auto report = [&](const char* what, bool pass, const std::string& detail) {
    std::printf("  %-34s %s %s\n", what, pass ? "ok" : "FAILED", detail.c_str());
    ok = ok && pass;
  };
  char buf[160];

  // Mass and invariants along a short run in each geometry.
  for (const auto& [name, p] : {std::pair{"1D", preset(PresetId::P1)},
                                std::pair{"d=3", p7(1e-10)}}) {
    Preset q = p;
    q.config.grid = Grid(201, p.config.grid.mass_total());
    q.config.t_final = 0.05;
    std::size_t invalid = 0;
    EvolveOptions opts;
    opts.on_step = [&](std::size_t, double, const Profile& u, const StepReport&) {
      if (!u.is_valid() || !(u.grid == q.config.grid)) ++invalid;
    };
    const auto res = evolve(initial_profile(q), q.config, opts);
    std::snprintf(buf, sizeof buf, "(%zu steps, %zu invalid, boundary drift %g)", res.trace.steps,
                  invalid, res.trace.max_boundary_drift);
    report(name[0] == '1' ? "mass and invariants, 1D" : "mass and invariants, d=3",
           invalid == 0 && res.trace.max_boundary_drift == 0.0 &&
               res.final_profile.grid.mass_total() == q.config.grid.mass_total(),
           buf);
  }
  for (const auto& [key, r] : cache) {
    std::snprintf(buf, sizeof buf, "(%zu invalid)", r.invalid_profiles);
    report(("invariants along run " + key).c_str(), r.invalid_profiles == 0, buf);
  }

  double worst = 0.0;
  for (int dim : {1, 2, 3}) {
    worst = std::max(worst, max_jacobian_deviation(dim, Integrator::BackwardEuler, CnPrefactor::Average));
    worst = std::max(worst, max_jacobian_deviation(dim, Integrator::CrankNicolson, CnPrefactor::Average));
    worst = std::max(worst, max_jacobian_deviation(dim, Integrator::CrankNicolson, CnPrefactor::NewLevel));
  }
  std::snprintf(buf, sizeof buf, "(max relative deviation %.2e)", worst);
  report("Jacobians vs finite differences", worst < 1e-5, buf);

  // Flat zero block: 1D u = 0 on the middle nodes, radial S = 0 near the origin.
  {
    SolverConfig c;
    c.params = {2.9, 1, 1.0};
    c.grid = Grid(21, 1.0);
    c.tau = 1e-3;
    std::vector<double> u(21);
    for (std::size_t i = 0; i < 21; ++i) {
      const double x = static_cast<double>(i) / 20.0;
      u[i] = x < 0.3 ? (x - 0.3) / 0.3 : x > 0.7 ? (x - 0.7) / 0.3 : 0.0;
    }
    double worst_flat = 0.0;
    for (auto integ : {Integrator::BackwardEuler, Integrator::CrankNicolson}) {
      c.integrator = integ;
      const auto f = residual_1d(u, u, c);
      for (std::size_t i = 8; i <= 12; ++i) worst_flat = std::max(worst_flat, std::abs(f[i - 1]));
    }
    SolverConfig r;
    r.params = {1.0, 3, 1.0};
    r.grid = Grid(21, 1.0);
    r.tau = 1e-3;
    r.eps_reg = 1e-10;
    std::vector<double> s(21);
    for (std::size_t i = 0; i < 21; ++i) {
      const double x = static_cast<double>(i) / 20.0;
      s[i] = x < 0.3 ? 0.0 : (x - 0.3) / 0.7;
    }
    for (auto integ : {Integrator::BackwardEuler, Integrator::CrankNicolson}) {
      r.integrator = integ;
      const auto f = residual_radial(s, s, r);
      for (std::size_t i = 1; i <= 4; ++i) worst_flat = std::max(worst_flat, std::abs(f[i - 1]));
    }
    std::snprintf(buf, sizeof buf, "(max |F| %.2e)", worst_flat);
    report("flat zero block residual", worst_flat == 0.0, buf);
  }

  // Oracle identities.
  {
    double worst_kernel = 0.0;
    for (double b : {1e-4, 1e-2, 1.0, 10.0}) {
      const double m = quad::integrate(
          [&](double z) { return 2.0 * std::numbers::pi * z * heat_kernel(b, z); }, 0.0,
          40.0 * std::sqrt(b), 1e-13);
      worst_kernel = std::max(worst_kernel, std::abs(m - 1.0));
    }
    std::snprintf(buf, sizeof buf, "(max deviation %.2e)", worst_kernel);
    report("heat kernel mass", worst_kernel < 1e-10, buf);

    const Oracle2DConfig oc;
    const ExactSolution2D ex(oc, 0.02);
    double worst_mass = 0.0;
    for (double rho : {0.3, 1.0, 2.0, 3.5}) {
      const double direct = quad::integrate(
          [&](double r) { return r * exact_kq_density(oc, 0.02, r); }, 0.0, rho, 1e-11);
      worst_mass = std::max(worst_mass, std::abs(direct - std::log1p(ex.partial_mass_h(rho))));
    }
    std::snprintf(buf, sizeof buf, "(max deviation %.2e)", worst_mass);
    report("M_f = log(1 + M_h)", worst_mass < 1e-8, buf);
  }

  // decay_rate and convergence rates on synthetic data.
  {
    TraceSet tr;
    tr.h_infinity = -2.0;
    for (int k = 0; k <= 100; ++k) {
      const double t = 0.004 * k;
      tr.entropy.push_back({t, tr.h_infinity + 0.7 * std::exp(-23.5 * t)});
    }
    const double alpha = decay_rate(tr, 0.05, 0.35);
    std::snprintf(buf, sizeof buf, "(alpha %.15g for 23.5)", alpha);
    report("decay_rate on an exponential", std::abs(alpha - 23.5) < 1e-9, buf);

    double worst_rate = 0.0;
    for (double p : {1.0, 2.0, 1.37}) {
      std::vector<double> e;
      for (int j = 0; j < 5; ++j) e.push_back(0.3 * std::pow(2.0, -p * j));
      for (const auto& r : convergence_rates(e))
        if (r) worst_rate = std::max(worst_rate, std::abs(*r - p));
    }
    std::snprintf(buf, sizeof buf, "(max deviation %.2e)", worst_rate);
    report("rates of 2^{-pj}", worst_rate < 1e-12, buf);
  }
  return ok;
}

struct Criterion {
  const char* name;
  const char* title;
  bool (*check)();
};

const Criterion kCriteria[] = {
    {"c1", "critical masses", c1},
    {"c2", "1D self-convergence (reduced scale)", c2},
    {"c3", "2D convergence to the exact solution", c3},
    {"c4", "entropy monotonicity", c4},
    {"c5", "condensation above the critical mass", c5},
    {"c6", "transient condensates", c6},
    {"c7", "entropy decay rates", c7},
    {"c8", "blow-up profile, ratio model", c8},
    {"c9", "long-time limit", c9},
    {"c10", "property suites", c10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> filter(argv + 1, argv + argc);
  for (const auto& f : filter) {
    if (std::none_of(std::begin(kCriteria), std::end(kCriteria),
                     [&](const Criterion& c) { return f == c.name; })) {
      std::fprintf(stderr, "unknown criterion '%s' (c1 ... c10)\n", f.c_str());
      return 2;
    }
  }
  int failed = 0;
  for (const auto& c : kCriteria) {
    if (!filter.empty() && std::find(filter.begin(), filter.end(), c.name) == filter.end()) continue;
    std::printf("%s: %s\n", c.name, c.title);
    std::fflush(stdout);
    bool pass = false;
    try {
      pass = c.check();
    } catch (const std::exception& e) {
      std::printf("  error: %s\n", e.what());
    }
    std::printf("%s %s %s\n", pass ? "PASS" : "FAIL", c.name, c.title);
    std::fflush(stdout);
    failed += pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
