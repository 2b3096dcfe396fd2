#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "condensate/cli.hpp"

namespace cli = condensate::cli;

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian schemes for the bosonic Fokker-Planck equation"};
  app.require_subcommand(1);

  cli::RunManifest m;
  std::string preset, config;

  auto add_source = [&](CLI::App* sub) {
    auto* p = sub->add_option("--preset", preset, "preset id (P1..P7, VAL1D, VAL2D-A, VAL2D-B)");
    auto* c = sub->add_option("--config", config, "configuration file");
    p->excludes(c);
    sub->add_flag("--scaled", m.scaled, "reduced-cost variant of the preset");
  };
  auto add_out = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--out", m.output_dir, "output directory");
    if (required) o->required();
  };

  auto* sim = app.add_subcommand("simulate", "run one configuration");
  add_source(sim);
  add_out(sim, true);
  sim->add_option("--cadence", m.observer_cadence, "steps between entropy samples")
      ->check(CLI::PositiveNumber);
  sim->add_option("--snapshot", m.snapshot_times, "snapshot times")->delimiter(',');

  auto* v1 = app.add_subcommand("validate1d", "reduced 1D convergence studies");
  add_out(v1, false);
  v1->add_option("--levels", m.levels, "mesh levels");
  v1->add_option("--reference-points", m.reference_points, "reference mesh points");
  v1->add_option("--reference-steps", m.reference_steps, "reference time steps");

  auto* v2 = app.add_subcommand("validate2d", "2D studies against the exact solution");
  add_out(v2, false);
  v2->add_option("--levels", m.levels, "mesh levels");

  auto* conv = app.add_subcommand("convergence", "one convergence study");
  add_out(conv, false);
  conv->add_option("--mode", m.mode, "final1d, spacetime1d, cn1d, final2d or spacetime2d");
  conv->add_option("--levels", m.levels, "mesh levels");
  conv->add_option("--reference-points", m.reference_points, "reference mesh points");
  conv->add_option("--reference-steps", m.reference_steps, "reference time steps");

  auto* pre = app.add_subcommand("presets", "list the presets");
  add_out(pre, false);

  auto* mini = app.add_subcommand("minimizer", "entropy minimiser of a configuration");
  add_source(mini);
  add_out(mini, false);
  mini->add_option("--mass", m.mass, "total mass (defaults to the datum mass)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  m.command = cli::command_from_string(sub->get_name());
  m.source_is_preset = !preset.empty();
  m.config_source = m.source_is_preset ? preset : config;
  return cli::run(m, std::cerr);
}
