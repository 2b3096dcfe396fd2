#pragma once

// Time loop and observers shared by evolve_1d and evolve_radial.

#include <algorithm>
#include <cmath>
#include <utility>

#include "condensate/diagnostics.hpp"
#include "condensate/error.hpp"
#include "condensate/model.hpp"
#include "condensate/solver1d.hpp"
#include "condensate/transform.hpp"

namespace condensate::detail {

inline constexpr int kMaxHalvings = 6;

template <class Step>
std::pair<Profile, StepReport> step_with_retry(const Profile& prev, const SolverConfig& cfg,
                                               Step&& step, int depth = 0) {
  try {
    return step(prev, cfg);
  } catch (const NonConvergence&) {
    if (!cfg.retry_halving || depth >= kMaxHalvings) throw;
  }
  SolverConfig half = cfg;
  half.tau = 0.5 * cfg.tau;
  auto [mid, r1] = step_with_retry(prev, half, step, depth + 1);
  auto [out, r2] = step_with_retry(mid, half, step, depth + 1);
  r2.newton_iterations += r1.newton_iterations;
  r2.rearrangements_applied += r1.rearrangements_applied;
  return {std::move(out), r2};
}

inline double minimizer_entropy(const Profile& like) {
  const MinimizerSpec spec = entropy_minimizer(like.grid.mass_total(), like.params);
  return entropy(minimizer_profile(spec, like.grid));
}

template <class Step>
EvolveResult evolve(const Profile& u0, const SolverConfig& cfg, const EvolveOptions& opts,
                    Step&& step) {
  cfg.validate();
  u0.validate();
  if (u0.grid != cfg.grid) throw DomainError("initial profile grid differs from the config grid");
  const std::size_t cadence = std::max<std::size_t>(opts.cadence, 1);
  const std::size_t steps = cfg.steps();

  EvolveResult out;
  TraceSet& trace = out.trace;
  if (opts.compute_h_infinity) trace.h_infinity = minimizer_entropy(u0);

  std::vector<double> pending = opts.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snapshot = 0;

  auto sample = [&](double t, const Profile& p, double xp) {
    if (opts.track_entropy) {
      const double h = entropy(p);
      if (!trace.entropy.empty()) {
        trace.max_entropy_increase =
            std::max(trace.max_entropy_increase, h - trace.entropy.back().value);
      }
      trace.entropy.push_back({t, h});
    }
    if (trace.condensate.empty() || trace.condensate.back().t < t) trace.condensate.push_back({t, xp});
  };
  auto take_due_snapshots = [&](double t, const Profile& p) {
    while (next_snapshot < pending.size() && t >= pending[next_snapshot] - 0.5 * cfg.tau) {
      trace.snapshots.push_back({t, p});
      ++next_snapshot;
    }
  };

  Profile current = u0;
  double xp = condensate_size(current, cfg.condensate_threshold);
  sample(0.0, current, xp);
  take_due_snapshots(0.0, current);
  bool condensed = xp > 0.0;

  for (std::size_t n = 1; n <= steps; ++n) {
    const double t = static_cast<double>(n) * cfg.tau;
    std::pair<Profile, StepReport> result;
    try {
      result = step(current, cfg);
    } catch (const NonConvergence& e) {
      throw NonConvergence(std::string(e.what()) + " at step " + std::to_string(n), e.residual(), n);
    }
    current = std::move(result.first);
    const StepReport& rep = result.second;
    ++trace.steps;
    trace.newton_iterations += static_cast<std::size_t>(rep.newton_iterations);
    trace.rearrangements += static_cast<std::size_t>(rep.rearrangements_applied);
    trace.max_boundary_drift = std::max(
        {trace.max_boundary_drift, std::abs(current.values.front() - current.lower()),
         std::abs(current.values.back() - current.upper())});

    xp = condensate_size(current, cfg.condensate_threshold);
    const bool now_condensed = xp > 0.0;
    const bool event = now_condensed != condensed;
    condensed = now_condensed;
    if (event && opts.snapshot_condensate_events) trace.snapshots.push_back({t, current});
    if (n % cadence == 0 || n == steps) {
      sample(t, current, xp);
    } else if (event) {
      trace.condensate.push_back({t, xp});
    }
    take_due_snapshots(t, current);
    if (opts.on_step) opts.on_step(n, t, current, rep);
  }
  out.final_profile = std::move(current);
  return out;
}

}  // namespace condensate::detail
