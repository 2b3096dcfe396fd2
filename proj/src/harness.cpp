#include "condensate/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

#include "condensate/error.hpp"
#include "condensate/solver_radial.hpp"

namespace condensate {

namespace {

constexpr double kGamma1D = 2.9;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PresetName {
  PresetId id;
  const char* name;
};

constexpr PresetName kNames[] = {
    {PresetId::P1, "P1"},       {PresetId::P2, "P2"},           {PresetId::P3, "P3"},
    {PresetId::P4, "P4"},       {PresetId::P5, "P5"},           {PresetId::P6, "P6"},
    {PresetId::P7, "P7"},       {PresetId::VAL1D, "VAL1D"},     {PresetId::VAL2D_A, "VAL2D-A"},
    {PresetId::VAL2D_B, "VAL2D-B"},
};

// Runs body(0) ... body(count - 1) on up to worker_threads() threads.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(count, worker_threads()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < count;) body(k);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

Preset gaussian_1d(PresetId id, std::string description, double amp, double sigma, double t_final,
                   double tau, std::size_t n) {
  Preset p;
  p.id = id;
  p.description = std::move(description);
  p.datum = {amp, sigma, 0.0, 0.0, true};
  p.config = make_config({kGamma1D, 1, 1.0}, p.datum, n, tau, t_final);
  return p;
}

Preset gaussian_3d(PresetId id, std::string description, double amp, double sigma, double t_final,
                   double tau, std::size_t n, double eps, double delta) {
  Preset p;
  p.id = id;
  p.description = std::move(description);
  p.datum = {amp, sigma, 0.0, 0.0, true};
  p.config = make_config({1.0, 3, 1.0}, p.datum, n, tau, t_final);
  p.config.eps_reg = eps;
  p.config.delta_reg = delta;
  return p;
}

Preset validation_2d(PresetId id, std::string description, std::size_t steps) {
  const ExactConvergenceOptions opts;
  Preset p;
  p.id = id;
  p.description = std::move(description);
  p.datum = {opts.oracle.amp, opts.oracle.sigma, 0.0, 0.0, false};
  const std::size_t n = opts.coarse_cells * 32 + 1;
  p.config.params = opts.oracle.params();
  p.config.grid = Grid(n, opts.oracle.initial_mass());
  p.config.tau = opts.t_final / static_cast<double>(steps);
  p.config.t_final = opts.t_final;
  p.config.condensate_threshold = SolverConfig::default_threshold(2);
  return p;
}

}  // namespace

std::string to_string(PresetId id) {
  for (const auto& e : kNames) {
    if (e.id == id) return e.name;
  }
  return "?";
}

std::vector<PresetId> all_presets() {
  std::vector<PresetId> out;
  for (const auto& e : kNames) out.push_back(e.id);
  return out;
}

PresetId preset_from_string(const std::string& name) {
  std::string valid;
  for (const auto& e : kNames) {
    if (name == e.name) return e.id;
    valid += valid.empty() ? "" : ", ";
    valid += e.name;
  }
  throw ConfigError("unknown preset '" + name + "' (valid: " + valid + ")");
}

DensityFn InitialDatum::density() const {
  const double a = peak();
  const double s2 = 2.0 * sigma * sigma;
  const double shift = v0;
  const double bg = background;
  return [a, s2, shift, bg](double v) {
    const double x = v - shift;
    return a * std::exp(-x * x / s2) + bg;
  };
}

double datum_mass(const InitialDatum& datum, const ModelParams& params, std::size_t n_points) {
  return density_mass(datum.density(), params, 10 * (n_points - 1));
}

SolverConfig make_config(const ModelParams& params, const InitialDatum& datum, std::size_t n_points,
                         double tau, double t_final) {
  params.validate();
  SolverConfig cfg;
  cfg.params = params;
  cfg.grid = Grid(n_points, datum_mass(datum, params, n_points));
  cfg.tau = tau;
  cfg.t_final = t_final;
  cfg.condensate_threshold = SolverConfig::default_threshold(params.dim);
  return cfg;
}

Preset preset(PresetId id) {
  switch (id) {
    case PresetId::P1: {
      auto p = gaussian_1d(id, "1D, m > m_c", 4.5, 0.7, 0.4, 1e-3, 2001);
      p.reference_alpha = 23.7;
      p.profile_window = {0.01, 0.2};
      p.fit_time = 0.1;
      return p;
    }
    case PresetId::P2: {
      Preset p;
      p.id = id;
      p.description = "1D, m > m_c, asymmetric datum";
      p.datum = {4.5, 0.7, -1.0, 0.1, true};
      p.config = make_config({kGamma1D, 1, 1.0}, p.datum, 2001, 1e-3, 0.4);
      p.reference_alpha = 23.0;
      p.profile_window = {0.01, 0.2};
      p.fit_time = 0.1;
      return p;
    }
    case PresetId::P3: {
      auto p = gaussian_1d(id, "1D, m < m_c", 1.5, 0.7, 0.4, 1e-3, 2001);
      p.reference_alpha = 23.8;
      return p;
    }
    case PresetId::P4: {
      auto p = gaussian_1d(id, "1D, m < m_c, concentrated datum", 1.5, 0.1, 0.4, 1e-6, 10001);
      p.reference_alpha = 23.1;
      return p;
    }
    case PresetId::P5: {
      auto p = gaussian_3d(id, "3D, m < m_c", 3.0, 0.3, 0.2, 1e-3, 2001, 0.0, 0.0);
      p.reference_alpha = 35.3;
      p.decay_window = {0.0, 0.2};
      return p;
    }
    case PresetId::P6: {
      auto p = gaussian_3d(id, "3D, m > m_c", 10.0, 0.9, 0.25, 5e-6, 50001, 1e-12, 0.0);
      p.reference_alpha = 21.1;
      p.decay_window = {0.05, 0.25};
      p.profile_window = {0.02, 0.2};
      p.fit_time = 0.1;
      return p;
    }
    case PresetId::P7: {
      auto p = gaussian_3d(id, "3D, m < m_c, concentrated datum", 50.0, 0.15, 0.25, 5e-5, 2001,
                           1e-10, 1e-10);
      p.reference_alpha = 21.7;
      p.decay_window = {0.0, 0.25};
      return p;
    }
    case PresetId::VAL1D: {
      auto p = gaussian_1d(id, "1D reference-solution validation (P1 datum)", 4.5, 0.7, 0.025,
                           0.025 / 1000.0, 12801);
      return p;
    }
    case PresetId::VAL2D_A:
      return validation_2d(id, "2D exact-solution validation, final time", 4000);
    case PresetId::VAL2D_B:
      return validation_2d(id, "2D exact-solution validation, space-time", 128);
  }
  throw ConfigError("unknown preset");
}

Preset scaled_preset(PresetId id) {
  Preset p = preset(id);
  if (id == PresetId::P4) {
    p.config = make_config(p.config.params, p.datum, 2001, 1e-4, p.config.t_final);
    p.config.retry_halving = true;
    p.scaled = true;
  } else if (id == PresetId::P6) {
    const SolverConfig old = p.config;
    p.config = make_config(old.params, p.datum, 5001, 5e-5, old.t_final);
    p.config.eps_reg = old.eps_reg;
    p.config.delta_reg = old.delta_reg;
    p.scaled = true;
  }
  return p;
}

Profile initial_profile(const SolverConfig& config, const InitialDatum& datum) {
  return inverse_cdf_from_density(datum.density(), config.params, config.grid);
}

Profile initial_profile(const Preset& preset) {
  if (preset.id == PresetId::VAL2D_A || preset.id == PresetId::VAL2D_B) {
    Oracle2DConfig oracle;
    oracle.amp = preset.datum.amp;
    oracle.sigma = preset.datum.sigma;
    oracle.r1 = preset.config.params.r1;
    return exact_profile(oracle, 0.0, preset.config.grid);
  }
  return initial_profile(preset.config, preset.datum);
}

EvolveResult evolve(const Profile& u0, const SolverConfig& cfg, const EvolveOptions& opts) {
  return u0.kind == ProfileKind::InverseCdf1D ? evolve_1d(u0, cfg, opts)
                                              : evolve_radial(u0, cfg, opts);
}

std::string to_string(ErrorMode mode) {
  return mode == ErrorMode::FinalTimeL2 ? "final_time_l2" : "space_time_l2";
}

std::string to_string(ReferenceKind kind) {
  return kind == ReferenceKind::FineMesh ? "fine_mesh" : "exact_2d";
}

bool ConvergenceReport::complete() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.failure.empty(); });
}

std::vector<double> ConvergenceReport::rates() const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.rate) out.push_back(*r.rate);
  }
  return out;
}

std::vector<std::optional<double>> convergence_rates(const std::vector<double>& errors) {
  std::vector<std::optional<double>> out(errors.size());
  for (std::size_t j = 1; j < errors.size(); ++j) {
    const double a = errors[j - 1];
    const double b = errors[j];
    if (std::isfinite(a) && std::isfinite(b) && a > 0.0 && b > 0.0) out[j] = std::log2(a / b);
  }
  return out;
}

namespace {

void fill_rates(ConvergenceReport& report) {
  std::vector<double> errors;
  for (const auto& r : report.rows) errors.push_back(r.error);
  const auto rates = convergence_rates(errors);
  for (std::size_t j = 0; j < rates.size(); ++j) report.rows[j].rate = rates[j];
}

EvolveOptions quiet_options() {
  EvolveOptions o;
  o.track_entropy = false;
  o.compute_h_infinity = false;
  o.snapshot_condensate_events = false;
  o.cadence = std::numeric_limits<std::size_t>::max();
  return o;
}

}  // namespace

ConvergenceReport self_convergence_1d(const SolverConfig& base, const InitialDatum& datum,
                                      std::size_t levels, ErrorMode mode,
                                      const SelfConvergenceOptions& opts) {
  if (levels < 1) throw DomainError("at least one level is required");
  if (base.params.dim != 1) throw DomainError("self_convergence_1d needs a 1D configuration");
  const std::size_t ref_cells = opts.reference_points - 1;
  const std::size_t finest = opts.coarse_cells << (levels - 1);
  if (ref_cells % finest != 0) {
    throw DomainError("level meshes do not nest into the reference mesh");
  }
  const double t_final = base.t_final;

  ConvergenceReport report;
  report.mode = mode;
  report.reference = ReferenceKind::FineMesh;
  report.integrator = base.integrator;
  report.normalization = mode == ErrorMode::FinalTimeL2 ? "sqrt(h * sum_i e_i^2) at T"
                                                        : "sqrt(h * tau * sum_k sum_i e_ki^2)";
  report.rows.resize(levels);

  // Reference trajectory, kept on the nodes of the finest level only.
  const std::size_t stride = ref_cells / finest;
  std::vector<std::vector<double>> ref_path;
  std::string ref_failure;
  auto keep = [&](const Profile& p) {
    std::vector<double> v(finest + 1);
    for (std::size_t i = 0; i <= finest; ++i) v[i] = p.values[i * stride];
    ref_path.push_back(std::move(v));
  };
  auto level_config = [&](std::size_t points, std::size_t steps) {
    SolverConfig cfg = base;
    cfg.grid = Grid(points, base.grid.mass_total());
    cfg.tau = t_final / static_cast<double>(steps);
    cfg.newton_tol = opts.newton_tol;
    return cfg;
  };

  std::vector<std::vector<std::vector<double>>> paths(levels);
  parallel_for(levels + 1, [&](std::size_t task) {
    if (task == 0) {
      try {
        const SolverConfig cfg = level_config(opts.reference_points, opts.reference_steps);
        const Profile u0 = initial_profile(cfg, datum);
        keep(u0);
        EvolveOptions o = quiet_options();
        if (mode == ErrorMode::SpaceTimeL2) {
          o.on_step = [&](std::size_t, double, const Profile& p, const StepReport&) { keep(p); };
          evolve_1d(u0, cfg, o);
        } else {
          keep(evolve_1d(u0, cfg, o).final_profile);
        }
      } catch (const std::exception& e) {
        ref_failure = std::string("reference: ") + e.what();
      }
      return;
    }
    const std::size_t j = task - 1;
    const std::size_t cells = opts.coarse_cells << j;
    const std::size_t steps =
        mode == ErrorMode::FinalTimeL2 ? opts.final_steps : opts.coarse_steps << j;
    ConvergenceRow& row = report.rows[j];
    row.mesh_size = cells;
    row.time_points = steps;
    try {
      const SolverConfig cfg = level_config(cells + 1, steps);
      EvolveOptions o = quiet_options();
      auto& path = paths[j];
      if (mode == ErrorMode::SpaceTimeL2) {
        o.on_step = [&](std::size_t, double, const Profile& p, const StepReport&) {
          path.push_back(p.values);
        };
        evolve_1d(initial_profile(cfg, datum), cfg, o);
      } else {
        path.push_back(evolve_1d(initial_profile(cfg, datum), cfg, o).final_profile.values);
      }
    } catch (const std::exception& e) {
      row.failure = e.what();
    }
  });

  for (std::size_t j = 0; j < levels; ++j) {
    ConvergenceRow& row = report.rows[j];
    if (!ref_failure.empty() && row.failure.empty()) row.failure = ref_failure;
    if (!row.failure.empty()) {
      row.error = kNaN;
      continue;
    }
    const std::size_t cells = row.mesh_size;
    const std::size_t step = finest / cells;  // stride in the stored reference nodes
    const double h = base.grid.mass_total() / static_cast<double>(cells);
    const double tau = t_final / static_cast<double>(row.time_points);
    auto sq_error = [&](const std::vector<double>& u, double t) {
      // Reference at time t, linear in time between stored levels.
      const double pos = mode == ErrorMode::FinalTimeL2
                             ? static_cast<double>(ref_path.size() - 1)
                             : t / t_final * static_cast<double>(opts.reference_steps);
      const auto k0 = std::min(static_cast<std::size_t>(pos), ref_path.size() - 1);
      const std::size_t k1 = std::min(k0 + 1, ref_path.size() - 1);
      const double w = pos - static_cast<double>(k0);
      double s = 0.0;
      for (std::size_t i = 0; i <= cells; ++i) {
        const double ref = (1.0 - w) * ref_path[k0][i * step] + w * ref_path[k1][i * step];
        const double e = u[i] - ref;
        s += e * e;
      }
      return s;
    };
    const auto& path = paths[j];
    if (mode == ErrorMode::FinalTimeL2) {
      row.error = std::sqrt(h * sq_error(path.back(), t_final));
    } else {
      double s = 0.0;
      for (std::size_t k = 0; k < path.size(); ++k) {
        s += sq_error(path[k], static_cast<double>(k + 1) * tau);
      }
      row.error = std::sqrt(h * tau * s);
    }
  }
  fill_rates(report);
  return report;
}

ConvergenceReport exact_convergence_2d(std::size_t levels, ErrorMode mode,
                                       const ExactConvergenceOptions& opts) {
  if (levels < 1) throw DomainError("at least one level is required");
  opts.oracle.validate();
  const Oracle2DConfig& oracle = opts.oracle;
  const double mass = oracle.initial_mass();

  ConvergenceReport report;
  report.mode = mode;
  report.reference = ReferenceKind::Exact2D;
  report.normalization = mode == ErrorMode::FinalTimeL2
                             ? "sqrt(2^-j * sum_{z_i <= m/2} e_i^2) at T"
                             : "sqrt(2^-2j * sum_k sum_{z_i <= m/2} e_ki^2)";
  report.rows.resize(levels);
  const ExactSolution2D final_exact(oracle, opts.t_final);
  report.tail_mass = final_exact.tail_mass();

  parallel_for(levels, [&](std::size_t j) {
    ConvergenceRow& row = report.rows[j];
    row.mesh_size = opts.coarse_cells << j;
    row.time_points = mode == ErrorMode::FinalTimeL2 ? opts.final_steps : opts.coarse_steps << j;
    try {
      SolverConfig cfg;
      cfg.params = oracle.params();
      cfg.grid = Grid(row.mesh_size + 1, mass);
      cfg.tau = opts.t_final / static_cast<double>(row.time_points);
      cfg.t_final = opts.t_final;
      cfg.condensate_threshold = SolverConfig::default_threshold(2);
      cfg.newton_tol = opts.newton_tol;
      const Grid& grid = cfg.grid;

      auto sq_error = [&](const Profile& s, const Profile& exact) {
        double sum = 0.0;
        for (std::size_t i = 0; i < grid.n_points() && grid.node(i) <= 0.5 * mass; ++i) {
          const double e = s.values[i] - exact.values[i];
          sum += e * e;
        }
        return sum;
      };
      const double scale = std::ldexp(1.0, -static_cast<int>(mode == ErrorMode::FinalTimeL2 ? j : 2 * j));
      EvolveOptions o = quiet_options();
      double sum = 0.0;
      if (mode == ErrorMode::SpaceTimeL2) {
        o.on_step = [&](std::size_t, double t, const Profile& p, const StepReport&) {
          sum += sq_error(p, exact_profile(ExactSolution2D(oracle, t), grid));
        };
        evolve_radial(exact_profile(oracle, 0.0, grid), cfg, o);
      } else {
        const auto result = evolve_radial(exact_profile(oracle, 0.0, grid), cfg, o);
        sum = sq_error(result.final_profile, exact_profile(final_exact, grid));
      }
      row.error = std::sqrt(scale * sum);
    } catch (const std::exception& e) {
      row.failure = e.what();
      row.error = kNaN;
    }
  });
  fill_rates(report);
  return report;
}

std::size_t worker_threads() {
  if (const char* env = std::getenv("CONDENSATE_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace condensate
