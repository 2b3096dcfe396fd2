#include "condensate/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "condensate/diagnostics.hpp"
#include "condensate/error.hpp"
#include "condensate/model.hpp"
#include "condensate/transform.hpp"
#include "json.hpp"

namespace condensate::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_number(const std::string& text, std::size_t line, const std::string& key) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw ConfigError("'" + key + "' expects a number, got '" + t + "'", line);
  }
  return v;
}

std::size_t parse_count(const std::string& text, std::size_t line, const std::string& key) {
  const double v = parse_number(text, line, key);
  if (v < 0.0 || v != std::floor(v)) {
    throw ConfigError("'" + key + "' expects a nonnegative integer", line);
  }
  return static_cast<std::size_t>(v);
}

bool parse_flag(const std::string& text, std::size_t line, const std::string& key) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "on" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "off" || t == "no" || t == "0") return false;
  throw ConfigError("'" + key + "' expects true or false", line);
}

InitialDatum parse_init(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("initial datum required", line);
  const std::string head = "gaussian(";
  if (lower(t.substr(0, head.size())) != head || t.back() != ')') {
    throw ConfigError("init expects gaussian(A, sigma[, v0, background])", line);
  }
  std::vector<double> args;
  std::stringstream ss(t.substr(head.size(), t.size() - head.size() - 1));
  for (std::string item; std::getline(ss, item, ',');) args.push_back(parse_number(item, line, "init"));
  if (args.size() < 2 || args.size() > 4) {
    throw ConfigError("init expects gaussian(A, sigma[, v0, background])", line);
  }
  InitialDatum d;
  d.amp = args[0];
  d.sigma = args[1];
  if (args.size() > 2) d.v0 = args[2];
  if (args.size() > 3) d.background = args[3];
  if (!(d.amp > 0.0) || !(d.sigma > 0.0) || d.background < 0.0) {
    throw ConfigError("init needs A > 0, sigma > 0 and background >= 0", line);
  }
  return d;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "gamma",         "dim",          "r1",         "n",         "tau",
      "t_final",       "eps",          "delta",      "integrator", "init",
      "amp_convention", "newton_tol",  "newton_max_iter", "rearrange", "abs_slope",
      "retry_halving", "condensate_threshold", "cn_prefactor"};
  return keys;
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

json config_json(const ParsedConfig& p) {
  const SolverConfig& c = p.config;
  json j;
  j["gamma"] = c.params.gamma;
  j["dim"] = c.params.dim;
  j["r1"] = c.params.r1;
  j["n"] = c.grid.n_points();
  j["mass_total"] = c.grid.mass_total();
  j["spacing"] = c.grid.spacing();
  j["tau"] = c.tau;
  j["t_final"] = c.t_final;
  j["steps"] = c.steps();
  j["integrator"] = to_string(c.integrator);
  j["cn_prefactor"] = c.cn_prefactor == CnPrefactor::Average ? "average" : "new_level";
  j["eps"] = c.eps_reg;
  j["delta"] = c.delta_reg;
  j["newton_tol"] = c.newton_tol;
  j["newton_max_iter"] = c.newton_max_iter;
  j["rearrange"] = c.rearrange;
  j["abs_slope"] = c.abs_slope;
  j["retry_halving"] = c.retry_halving;
  j["condensate_threshold"] = c.condensate_threshold;
  j["init"] = {{"kind", "gaussian"},
               {"amp", p.datum.amp},
               {"sigma", p.datum.sigma},
               {"v0", p.datum.v0},
               {"background", p.datum.background},
               {"amp_convention", p.datum.amp_per_sigma ? "per_sigma" : "plain"}};
  return j;
}

json optional_number(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

json report_json(const ConvergenceReport& r, const std::string& label) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr;
    jr["time_points"] = row.time_points;
    jr["mesh_size"] = row.mesh_size;
    jr["error"] = std::isfinite(row.error) ? json(row.error) : json(nullptr);
    jr["rate"] = optional_number(row.rate);
    if (!row.failure.empty()) jr["failure"] = row.failure;
    rows.push_back(jr);
  }
  json j;
  j["study"] = label;
  j["mode"] = to_string(r.mode);
  j["reference"] = to_string(r.reference);
  j["integrator"] = to_string(r.integrator);
  j["normalization"] = r.normalization;
  if (r.tail_mass) j["tail_mass"] = *r.tail_mass;
  j["complete"] = r.complete();
  j["rows"] = rows;
  return j;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_convergence_csv(const fs::path& path, const ConvergenceReport& r) {
  std::vector<std::vector<double>> rows;
  for (const auto& row : r.rows) {
    rows.push_back({static_cast<double>(row.time_points), static_cast<double>(row.mesh_size),
                    row.error, row.rate.value_or(std::numeric_limits<double>::quiet_NaN())});
  }
  write_csv(path.string(), {"time_points", "mesh_size", "error", "rate"}, rows);
}

struct Loaded {
  ParsedConfig parsed;
  std::optional<Preset> preset;
};

Loaded load(const RunManifest& m) {
  if (m.config_source.empty()) throw ConfigError("no preset or configuration file given");
  Loaded out;
  if (m.source_is_preset) {
    const PresetId id = preset_from_string(m.config_source);
    out.preset = m.scaled ? scaled_preset(id) : preset(id);
    out.parsed = {out.preset->config, out.preset->datum};
    return out;
  }
  std::ifstream in(m.config_source);
  if (!in) throw ConfigError("cannot read configuration file '" + m.config_source + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  out.parsed = parse_config(ss.str());
  return out;
}

Profile start_profile(const Loaded& l) {
  if (l.preset) return initial_profile(*l.preset);
  return initial_profile(l.parsed.config, l.parsed.datum);
}

void write_profile_files(const fs::path& dir, double t, const Profile& p) {
  std::vector<std::vector<double>> rows;
  rows.reserve(p.values.size());
  for (std::size_t i = 0; i < p.values.size(); ++i) rows.push_back({p.grid.node(i), p.values[i]});
  write_csv((dir / snapshot_name("profile", t)).string(), {"mass_coordinate", "value"}, rows);
  rows.clear();
  for (const auto& s : density_from_profile(p)) rows.push_back({s.v, s.f});
  write_csv((dir / snapshot_name("density", t)).string(), {"v", "f"}, rows);
}

int simulate(const RunManifest& m, const fs::path& dir, json& report, std::ostream& log) {
  const Loaded l = load(m);
  const SolverConfig& cfg = l.parsed.config;
  report["config"] = config_json(l.parsed);
  if (l.preset) {
    report["preset"] = to_string(l.preset->id);
    report["scaled"] = l.preset->scaled;
  }
  const std::string warning = cfg.params.solver_warning();
  if (!warning.empty()) report["warning"] = warning;

  EvolveOptions opts;
  opts.cadence = m.observer_cadence;
  opts.snapshot_times = m.snapshot_times;
  const std::optional<double> fit_time = l.preset ? l.preset->fit_time : std::nullopt;
  if (fit_time) opts.snapshot_times.push_back(*fit_time);
  const EvolveResult result = evolve(start_profile(l), cfg, opts);
  const TraceSet& tr = result.trace;
  const double t_end = static_cast<double>(cfg.steps()) * cfg.tau;

  std::vector<std::vector<double>> rows;
  for (const auto& e : tr.entropy) rows.push_back({e.t, e.value, e.value - tr.h_infinity});
  write_csv((dir / "entropy.csv").string(), {"t", "H", "H_relative"}, rows);
  rows.clear();
  for (const auto& e : tr.condensate) rows.push_back({e.t, e.value});
  write_csv((dir / "condensate.csv").string(), {"t", "x_p"}, rows);

  json snaps = json::array();
  for (const auto& s : tr.snapshots) {
    write_profile_files(dir, s.t, s.profile);
    snaps.push_back(s.t);
  }
  write_profile_files(dir, t_end, result.final_profile);
  snaps.push_back(t_end);
  report["snapshots"] = snaps;

  json ent;
  ent["h_infinity"] = tr.h_infinity;
  ent["initial"] = tr.entropy.empty() ? json(nullptr) : json(tr.entropy.front().value);
  ent["final"] = tr.entropy.empty() ? json(nullptr) : json(tr.entropy.back().value);
  ent["max_increase"] = tr.entropy.size() > 1 ? json(tr.max_entropy_increase) : json(nullptr);
  report["entropy"] = ent;

  const auto window = l.preset ? l.preset->decay_window : std::pair{0.05, 0.35};
  json decay;
  decay["window"] = {window.first, window.second};
  if (l.preset && l.preset->reference_alpha) decay["reference_alpha"] = *l.preset->reference_alpha;
  try {
    decay["alpha"] = decay_rate(tr, window.first, std::min(window.second, t_end));
  } catch (const DomainError& e) {
    decay["alpha"] = nullptr;
    decay["error"] = e.what();
  }
  report["decay_rate"] = decay;

  std::optional<double> onset, offset;
  double peak = 0.0;
  for (const auto& e : tr.condensate) {
    peak = std::max(peak, e.value);
    if (!onset && e.value > 0.0) onset = e.t;
    if (onset && !offset && e.value == 0.0) offset = e.t;
  }
  json cond;
  cond["onset"] = optional_number(onset);
  cond["offset"] = optional_number(offset);
  cond["max"] = peak;
  cond["final"] = tr.condensate.empty() ? 0.0 : tr.condensate.back().value;
  report["condensate"] = cond;

  // Near-singularity fit on the requested snapshot, else the last snapshot
  // with a condensate.
  const Snapshot* chosen = nullptr;
  for (const auto& s : tr.snapshots) {
    if (condensate_size(s.profile, cfg.condensate_threshold) <= 0.0) continue;
    if (fit_time) {
      if (std::abs(s.t - *fit_time) <= cfg.tau) chosen = &s;
    } else {
      chosen = &s;
    }
  }
  if (chosen) {
    const auto pw = l.preset ? l.preset->profile_window : std::pair{0.0, 0.2 * cfg.params.r1};
    json fit;
    fit["t"] = chosen->t;
    fit["window"] = {pw.first, pw.second};
    try {
      const ProfileFit f = blowup_profile_fit(chosen->profile, pw.first, pw.second);
      fit["model"] = f.model == ProfileModel::Ratio ? "ratio" : "difference";
      fit["c_tilde"] = f.c_tilde;
      fit["r_squared"] = f.r_squared;
      fit["samples"] = f.samples;
    } catch (const DomainError& e) {
      fit["error"] = e.what();
    }
    report["profile_fit"] = fit;
  } else {
    report["profile_fit"] = nullptr;
  }

  json run;
  run["steps"] = tr.steps;
  run["newton_iterations"] = tr.newton_iterations;
  run["rearrangements"] = tr.rearrangements;
  run["max_boundary_drift"] = tr.max_boundary_drift;
  report["run"] = run;

  log << "simulated " << tr.steps << " steps to t = " << format_number(t_end) << "; x_p(T) = "
      << format_number(cond["final"].get<double>()) << '\n';
  return kExitOk;
}

SelfConvergenceOptions reduced_options(const RunManifest& m, std::size_t points, std::size_t steps) {
  SelfConvergenceOptions o;
  o.reference_points = m.reference_points ? m.reference_points : points;
  o.reference_steps = m.reference_steps ? m.reference_steps : steps;
  o.final_steps = o.reference_steps;
  return o;
}

ConvergenceReport study(const std::string& mode, std::size_t levels,
                        const SelfConvergenceOptions& o) {
  if (mode == "final2d") return exact_convergence_2d(levels, ErrorMode::FinalTimeL2);
  if (mode == "spacetime2d") return exact_convergence_2d(levels, ErrorMode::SpaceTimeL2);
  const bool cn = mode == "cn1d";
  if (mode != "final1d" && mode != "spacetime1d" && !cn) {
    throw ConfigError("unknown convergence mode '" + mode +
                      "' (valid: final1d, spacetime1d, cn1d, final2d, spacetime2d)");
  }
  // The reference-solution setup: P1 datum at T = 0.025; CN on the P3 datum.
  const Preset p = preset(cn ? PresetId::P3 : PresetId::VAL1D);
  SolverConfig base = p.config;
  base.t_final = 0.025;
  if (cn) base.integrator = Integrator::CrankNicolson;
  return self_convergence_1d(base, p.datum, levels,
                             mode == "final1d" ? ErrorMode::FinalTimeL2 : ErrorMode::SpaceTimeL2, o);
}

int convergence(const std::vector<std::string>& modes, const RunManifest& m,
                const SelfConvergenceOptions& o, const fs::path& dir, json& report,
                std::ostream& log) {
  if (m.levels < 1) throw ConfigError("levels must be at least 1");
  json tables = json::array();
  bool complete = true;
  for (const auto& mode : modes) {
    const ConvergenceReport r = study(mode, m.levels, o);
    tables.push_back(report_json(r, mode));
    if (!dir.empty()) write_convergence_csv(dir / ("convergence_" + mode + ".csv"), r);
    complete = complete && r.complete();
    log << mode << ":";
    for (const auto& row : r.rows) {
      log << ' ' << format_number(row.error);
      if (row.rate) log << " (" << format_number(*row.rate) << ')';
    }
    log << '\n';
  }
  report["convergence"] = tables;
  return complete ? kExitOk : kExitNonConvergence;
}

int presets(json& report, std::ostream& log) {
  json list = json::array();
  for (PresetId id : all_presets()) {
    const Preset p = preset(id);
    json j;
    j["id"] = to_string(id);
    j["description"] = p.description;
    j["config"] = config_json({p.config, p.datum});
    j["reference_alpha"] = optional_number(p.reference_alpha);
    list.push_back(j);
    log << to_string(id) << ": " << p.description << '\n';
  }
  report["presets"] = list;
  return kExitOk;
}

int minimizer(const RunManifest& m, const fs::path& dir, json& report, std::ostream& log) {
  const Loaded l = load(m);
  SolverConfig cfg = l.parsed.config;
  const double mass = m.mass > 0.0 ? m.mass : cfg.grid.mass_total();
  cfg.grid = Grid(cfg.grid.n_points(), mass);
  const MinimizerSpec spec = entropy_minimizer(mass, cfg.params);
  const CriticalMass mc = critical_mass(cfg.params);
  json j;
  j["total_mass"] = spec.total_mass;
  j["critical_mass"] = mc.is_infinite() ? json("infinite") : json(mc.value());
  j["theta"] = spec.theta;
  j["dirac_mass"] = spec.dirac_mass;
  report["config"] = config_json({cfg, l.parsed.datum});
  report["minimizer"] = j;
  const Profile p = minimizer_profile(spec, cfg.grid);
  report["h_infinity"] = entropy(p);
  if (!dir.empty()) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < p.values.size(); ++i) rows.push_back({p.grid.node(i), p.values[i]});
    write_csv((dir / "minimizer_profile.csv").string(), {"mass_coordinate", "value"}, rows);
    rows.clear();
    for (const auto& s : density_from_profile(p)) rows.push_back({s.v, s.f});
    write_csv((dir / "minimizer_density.csv").string(), {"v", "f"}, rows);
  }
  log << "theta = " << format_number(spec.theta) << ", dirac mass = "
      << format_number(spec.dirac_mass) << '\n';
  return kExitOk;
}

}  // namespace

ParsedConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("unknown key '" + key + "'", line_no);
    }
    if (entries.count(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
    entries[key] = {value, line_no};
  }

  auto number = [&](const std::string& key, double fallback) {
    const auto it = entries.find(key);
    return it == entries.end() ? fallback : parse_number(it->second.value, it->second.line, key);
  };
  auto line_of = [&](const std::string& key) {
    const auto it = entries.find(key);
    return it == entries.end() ? std::size_t{0} : it->second.line;
  };
  auto flag = [&](const std::string& key, bool fallback) {
    const auto it = entries.find(key);
    return it == entries.end() ? fallback : parse_flag(it->second.value, it->second.line, key);
  };

  const auto init = entries.find("init");
  if (init == entries.end()) throw ConfigError("initial datum required");
  InitialDatum datum = parse_init(init->second.value, init->second.line);
  if (const auto it = entries.find("amp_convention"); it != entries.end()) {
    const std::string v = lower(it->second.value);
    if (v != "per_sigma" && v != "plain") {
      throw ConfigError("amp_convention expects per_sigma or plain", it->second.line);
    }
    datum.amp_per_sigma = v == "per_sigma";
  } else {
    datum.amp_per_sigma = true;
  }

  const double dim_value = number("dim", 1.0);
  if (dim_value != 1.0 && dim_value != 2.0 && dim_value != 3.0) {
    throw ConfigError("dim must be 1, 2 or 3", line_of("dim"));
  }
  const int dim = static_cast<int>(dim_value);
  ModelParams params{number("gamma", dim == 1 ? 2.9 : 1.0), dim, number("r1", 1.0)};
  if (!(params.gamma > 0.0)) throw ConfigError("gamma must be positive", line_of("gamma"));
  if (!(params.r1 > 0.0)) throw ConfigError("r1 must be positive", line_of("r1"));
  const std::size_t n =
      entries.count("n") ? parse_count(entries["n"].value, entries["n"].line, "n") : 2001;
  if (n < 3) throw ConfigError("n must be at least 3", line_of("n"));
  const double tau = number("tau", 1e-3);
  if (!(tau > 0.0)) throw ConfigError("tau must be positive", line_of("tau"));
  const double t_final = number("t_final", 0.4);
  if (!(t_final >= 0.0)) throw ConfigError("t_final must be nonnegative", line_of("t_final"));

  ParsedConfig out;
  out.datum = datum;
  try {
    out.config = make_config(params, datum, n, tau, t_final);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("initial datum: ") + e.what(), init->second.line);
  }
  SolverConfig& c = out.config;
  c.eps_reg = number("eps", 0.0);
  c.delta_reg = number("delta", 0.0);
  if (c.eps_reg < 0.0) throw ConfigError("eps must be nonnegative", line_of("eps"));
  if (c.delta_reg < 0.0) throw ConfigError("delta must be nonnegative", line_of("delta"));
  if (const auto it = entries.find("integrator"); it != entries.end()) {
    try {
      c.integrator = integrator_from_string(it->second.value);
    } catch (const DomainError& e) {
      throw ConfigError(e.what(), it->second.line);
    }
  }
  if (const auto it = entries.find("cn_prefactor"); it != entries.end()) {
    const std::string v = lower(it->second.value);
    if (v != "average" && v != "new_level") {
      throw ConfigError("cn_prefactor expects average or new_level", it->second.line);
    }
    c.cn_prefactor = v == "average" ? CnPrefactor::Average : CnPrefactor::NewLevel;
  }
  c.newton_tol = number("newton_tol", c.newton_tol);
  if (!(c.newton_tol > 0.0)) throw ConfigError("newton_tol must be positive", line_of("newton_tol"));
  if (entries.count("newton_max_iter")) {
    const auto& e = entries["newton_max_iter"];
    const std::size_t v = parse_count(e.value, e.line, "newton_max_iter");
    if (v < 1) throw ConfigError("newton_max_iter must be at least 1", e.line);
    c.newton_max_iter = static_cast<int>(v);
  }
  c.rearrange = flag("rearrange", c.rearrange);
  c.abs_slope = flag("abs_slope", c.abs_slope);
  c.retry_halving = flag("retry_halving", c.retry_halving);
  c.condensate_threshold = number("condensate_threshold", c.condensate_threshold);
  if (!(c.condensate_threshold > 0.0)) {
    throw ConfigError("condensate_threshold must be positive", line_of("condensate_threshold"));
  }
  return out;
}

std::string format_config(const ParsedConfig& p) {
  const SolverConfig& c = p.config;
  std::ostringstream os;
  os << "gamma = " << format_number(c.params.gamma) << '\n'
     << "dim = " << c.params.dim << '\n'
     << "r1 = " << format_number(c.params.r1) << '\n'
     << "n = " << c.grid.n_points() << '\n'
     << "tau = " << format_number(c.tau) << '\n'
     << "t_final = " << format_number(c.t_final) << '\n'
     << "eps = " << format_number(c.eps_reg) << '\n'
     << "delta = " << format_number(c.delta_reg) << '\n'
     << "integrator = " << to_string(c.integrator) << '\n'
     << "retry_halving = " << (c.retry_halving ? "true" : "false") << '\n'
     << "amp_convention = " << (p.datum.amp_per_sigma ? "per_sigma" : "plain") << '\n'
     << "init = gaussian(" << format_number(p.datum.amp) << ", " << format_number(p.datum.sigma)
     << ", " << format_number(p.datum.v0) << ", " << format_number(p.datum.background) << ")\n";
  return os.str();
}

Command command_from_string(const std::string& name) {
  const std::string s = lower(name);
  if (s == "simulate") return Command::Simulate;
  if (s == "validate1d") return Command::Validate1D;
  if (s == "validate2d") return Command::Validate2D;
  if (s == "convergence") return Command::Convergence;
  if (s == "presets") return Command::Presets;
  if (s == "minimizer") return Command::Minimizer;
  throw ConfigError("unknown command '" + name + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Simulate: return "simulate";
    case Command::Validate1D: return "validate1d";
    case Command::Validate2D: return "validate2d";
    case Command::Convergence: return "convergence";
    case Command::Presets: return "presets";
    case Command::Minimizer: return "minimizer";
  }
  return "?";
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_number(row[k]);
    out << '\n';
  }
}

std::string snapshot_name(const std::string& stem, double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%.6f.csv", stem.c_str(), t);
  return buf;
}

int run(const RunManifest& m, std::ostream& log) {
  json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = to_string(m.command);
  report["status"] = "ok";
  const fs::path dir = m.output_dir;
  int code = kExitOk;
  try {
    if (m.observer_cadence < 1) throw ConfigError("cadence must be at least 1");
    if (!dir.empty()) {
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
    } else if (m.command == Command::Simulate) {
      throw ConfigError("simulate needs an output directory");
    }
    switch (m.command) {
      case Command::Simulate:
        code = simulate(m, dir, report, log);
        break;
      case Command::Validate1D:
        code = convergence({"final1d", "spacetime1d", "cn1d"}, m, reduced_options(m, 3201, 500), dir,
                           report, log);
        break;
      case Command::Validate2D:
        code = convergence({"final2d", "spacetime2d"}, m, {}, dir, report, log);
        break;
      case Command::Convergence:
        code = convergence({m.mode}, m, reduced_options(m, 12801, 1000), dir, report, log);
        break;
      case Command::Presets:
        code = presets(report, log);
        break;
      case Command::Minimizer:
        code = minimizer(m, dir, report, log);
        break;
    }
    if (code != kExitOk) report["status"] = "nonconvergence";
  } catch (const NonConvergence& e) {
    code = kExitNonConvergence;
    report["status"] = "nonconvergence";
    report["error"] = e.what();
  } catch (const LogSingularity& e) {
    code = kExitNonConvergence;
    report["status"] = "nonconvergence";
    report["error"] = e.what();
  } catch (const std::exception& e) {
    code = kExitConfigError;
    report["status"] = "config_error";
    report["error"] = e.what();
  }
  if (report.contains("error")) log << "error: " << report["error"].get<std::string>() << '\n';
  if (!dir.empty() && fs::is_directory(dir)) {
    try {
      write_json(dir / "report.json", report);
    } catch (const std::exception& e) {
      log << "error: " << e.what() << '\n';
    }
  }
  return code;
}

}  // namespace condensate::cli
