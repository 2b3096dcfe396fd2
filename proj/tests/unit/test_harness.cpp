#include <cmath>

#include "condensate/error.hpp"
#include "condensate/harness.hpp"
#include "condensate/model.hpp"
#include "doctest.h"

using namespace condensate;

TEST_SUITE("harness") {
  TEST_CASE("preset names round trip") {
    for (PresetId id : all_presets()) CHECK(preset_from_string(to_string(id)) == id);
    CHECK_THROWS_AS(preset_from_string("P8"), ConfigError);
  }

  TEST_CASE("preset masses sit on the intended side of m_c") {
    const double mc1 = critical_mass({2.9, 1, 1.0}).value();
    const double mc3 = critical_mass({1.0, 3, 1.0}).value();
    CHECK(preset(PresetId::P1).config.grid.mass_total() > mc1);
    CHECK(preset(PresetId::P2).config.grid.mass_total() > mc1);
    CHECK(preset(PresetId::P3).config.grid.mass_total() < mc1);
    CHECK(preset(PresetId::P4).config.grid.mass_total() < mc1);
    CHECK(preset(PresetId::P5).config.grid.mass_total() < mc3);
    CHECK(preset(PresetId::P6).config.grid.mass_total() > mc3);
    CHECK(preset(PresetId::P7).config.grid.mass_total() < mc3);
  }

  TEST_CASE("amplitude convention") {
    const InitialDatum d{1.5, 0.1, 0.0, 0.0, true};
    CHECK(d.peak() == doctest::Approx(15.0));
    CHECK(d.density()(0.0) == doctest::Approx(15.0));
    // Mass of the 1D datum: A sqrt(2 pi) up to the cut at R1 = 1.
    CHECK(datum_mass(d, {2.9, 1, 1.0}, 2001) ==
          doctest::Approx(1.5 * std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-9));
  }

  TEST_CASE("scaled presets") {
    const Preset p4 = scaled_preset(PresetId::P4);
    CHECK(p4.scaled);
    CHECK(p4.config.grid.n_points() == 2001);
    CHECK(p4.config.retry_halving);
    const Preset p6 = scaled_preset(PresetId::P6);
    CHECK(p6.config.grid.n_points() == 5001);
    CHECK(p6.config.tau == 5e-5);
    CHECK(p6.config.eps_reg == preset(PresetId::P6).config.eps_reg);
    CHECK_FALSE(scaled_preset(PresetId::P1).scaled);
  }

  TEST_CASE("convergence rates are exact on powers of two") {
    for (double p : {1.0, 2.0, 0.7}) {
      std::vector<double> e;
      for (int j = 0; j < 5; ++j) e.push_back(0.01 * std::pow(2.0, -p * j));
      const auto r = convergence_rates(e);
      CHECK_FALSE(r[0].has_value());
      for (std::size_t j = 1; j < r.size(); ++j) CHECK(*r[j] == doctest::Approx(p).epsilon(1e-13));
    }
  }

  TEST_CASE("small self-convergence study") {
    SolverConfig base = preset(PresetId::P3).config;
    base.t_final = 0.005;
    SelfConvergenceOptions o;
    o.coarse_cells = 20;
    o.final_steps = 20;
    o.reference_points = 321;
    o.reference_steps = 20;
    const auto r = self_convergence_1d(base, preset(PresetId::P3).datum, 3, ErrorMode::FinalTimeL2, o);
    REQUIRE(r.complete());
    CHECK(r.rows.size() == 3);
    CHECK(r.rows[0].mesh_size == 20);
    CHECK(r.rows[2].mesh_size == 80);
    for (const auto& row : r.rows) CHECK(row.error > 0.0);
    CHECK(r.rows[2].error < r.rows[0].error);
  }

  TEST_CASE("labels") {
    CHECK(to_string(ErrorMode::SpaceTimeL2) == "space_time_l2");
    CHECK(to_string(ReferenceKind::Exact2D) == "exact_2d");
  }
}
