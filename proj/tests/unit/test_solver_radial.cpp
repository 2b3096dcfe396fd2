#include <cmath>
#include <vector>

#include "condensate/error.hpp"
#include "condensate/harness.hpp"
#include "condensate/solver_radial.hpp"
#include "condensate/transform.hpp"
#include "doctest.h"

using namespace condensate;

namespace {

SolverConfig radial_config(int dim, std::size_t n, double mass) {
  SolverConfig c;
  c.params = {1.0, dim, 1.0};
  c.grid = Grid(n, mass);
  c.tau = 1e-3;
  c.condensate_threshold = kCondensateThresholdRadial;
  return c;
}

}  // namespace

TEST_SUITE("solver_radial") {
  TEST_CASE("Jacobian matches finite differences") {
    for (int dim : {2, 3}) {
      const ModelParams params{1.0, dim, 1.0};
      const DensityFn f = [](double v) { return 3.0 * std::exp(-v * v / 0.18); };
      SolverConfig c = radial_config(dim, 11, density_mass(f, params, 10000));
      c.eps_reg = 1e-3;
      c.delta_reg = 1e-3;
      const Profile s = inverse_cdf_from_density(f, params, c.grid);
      std::vector<double> prev = s.values;
      for (std::size_t i = 1; i + 1 < prev.size(); ++i) prev[i] *= 0.97;
      for (auto integ : {Integrator::BackwardEuler, Integrator::CrankNicolson}) {
        c.integrator = integ;
        const Tridiagonal jac = jacobian_radial(s.values, prev, c);
        double worst = 0.0;
        for (std::size_t j = 1; j + 1 < s.values.size(); ++j) {
          auto xp = s.values, xm = s.values;
          const double e = 1e-6 * std::max(1.0, s.values[j]);
          xp[j] += e;
          xm[j] -= e;
          const auto rp = residual_radial(xp, prev, c), rm = residual_radial(xm, prev, c);
          for (std::size_t i = 0; i < rp.size(); ++i) {
            const double fd = (rp[i] - rm[i]) / (2.0 * e);
            worst = std::max(worst, std::abs(fd - jac.at(i, j - 1)) / std::max(1.0, std::abs(fd)));
          }
        }
        CHECK(worst < 1e-5);
      }
    }
  }

  TEST_CASE("log singularity without eps") {
    SolverConfig c = radial_config(3, 6, 1.0);
    const std::vector<double> s{0.0, 0.0, 0.0, 0.3, 0.6, 1.0};
    CHECK_THROWS_AS(residual_radial(s, s, c), LogSingularity);
  }

  TEST_CASE("zero block at the origin is a fixed point") {
    SolverConfig c = radial_config(3, 6, 1.0);
    c.eps_reg = 1e-10;
    const std::vector<double> s{0.0, 0.0, 0.0, 0.3, 0.6, 1.0};
    for (auto integ : {Integrator::BackwardEuler, Integrator::CrankNicolson}) {
      c.integrator = integ;
      const auto f = residual_radial(s, s, c);
      CHECK(f[0] == 0.0);
      CHECK(f[1] == 0.0);
    }
  }

  TEST_CASE("short 3D run keeps invariants and decreases entropy") {
    Preset p = preset(PresetId::P5);
    p.config.grid = Grid(201, p.config.grid.mass_total());
    p.config.t_final = 0.02;
    std::size_t invalid = 0;
    EvolveOptions opts;
    opts.on_step = [&](std::size_t, double, const Profile& s, const StepReport&) {
      invalid += !s.is_valid();
    };
    const EvolveResult r = evolve_radial(initial_profile(p), p.config, opts);
    CHECK(invalid == 0);
    CHECK(r.trace.steps == 20);
    CHECK(r.trace.max_entropy_increase <= 1e-10);
  }
}
