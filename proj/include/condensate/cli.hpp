#pragma once

// Configuration text, run manifests and the files written per command.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "condensate/harness.hpp"
#include "condensate/solver_config.hpp"

namespace condensate::cli {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitNonConvergence = 2;
inline constexpr int kExitConfigError = 3;

struct ParsedConfig {
  SolverConfig config;
  InitialDatum datum;
};

/// One `key = value` per line; `#` starts a comment. Keys and defaults:
///   gamma (2.9 in 1D, 1 otherwise), dim (1), r1 (1), n (2001), tau (1e-3),
///   t_final (0.4), eps (0), delta (0), integrator (backward_euler),
///   init = gaussian(A, sigma[, v0, background]) (required),
///   amp_convention (per_sigma | plain, default per_sigma),
///   newton_tol (1e-8), newton_max_iter (50), rearrange (true),
///   abs_slope (false), retry_halving (false), condensate_threshold (by dim),
///   cn_prefactor (average | new_level).
/// Throws ConfigError carrying the line number.
ParsedConfig parse_config(const std::string& text);

/// Inverse of parse_config for a preset-like configuration.
std::string format_config(const ParsedConfig& parsed);

enum class Command { Simulate, Validate1D, Validate2D, Convergence, Presets, Minimizer };

/// Throws ConfigError on unknown names.
Command command_from_string(const std::string& name);
std::string to_string(Command command);

struct RunManifest {
  Command command = Command::Simulate;
  /// Preset id or configuration file path.
  std::string config_source;
  bool source_is_preset = false;
  /// Use the reduced-cost preset variant.
  bool scaled = false;
  std::string output_dir;
  std::size_t observer_cadence = 10;
  std::vector<double> snapshot_times;
  /// Convergence: final1d, spacetime1d, cn1d, final2d, spacetime2d.
  std::string mode = "final1d";
  std::size_t levels = 4;
  /// 1D convergence reference (0 keeps the harness defaults).
  std::size_t reference_points = 0;
  std::size_t reference_steps = 0;
  /// Minimizer: total mass (0 uses the mass of the configured datum).
  double mass = 0.0;
};

/// Executes the manifest, writing files under output_dir (created when
/// missing) and a short summary to `log`. Returns 0 on success, 2 on solver
/// nonconvergence, 3 on configuration errors; failures are also recorded in
/// output_dir/report.json when an output directory is set.
int run(const RunManifest& manifest, std::ostream& log);

/// 17 significant digits, '.' decimal separator.
std::string format_number(double x);

/// Header plus rows, ',' separated, '\n' terminated.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// File name for a snapshot at time t: "<stem>_<t with 6 decimals>.csv".
std::string snapshot_name(const std::string& stem, double t);

}  // namespace condensate::cli
