#include <cmath>
#include <numbers>

#include "condensate/error.hpp"
#include "condensate/oracle2d.hpp"
#include "condensate/quadrature.hpp"
#include "doctest.h"

using namespace condensate;

TEST_SUITE("oracle2d") {
  TEST_CASE("truncation radius (frozen)") {
    CHECK(choose_r1(1e-4) == doctest::Approx(4.2919553509).epsilon(1e-10));
    CHECK_THROWS_AS(choose_r1(0.0), DomainError);
  }

  TEST_CASE("heat kernel has unit mass") {
    for (double b : {1e-3, 0.1, 2.0}) {
      const double m = quad::integrate(
          [&](double z) { return 2.0 * std::numbers::pi * z * heat_kernel(b, z); }, 0.0,
          40.0 * std::sqrt(b), 1e-13);
      CHECK(m == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  TEST_CASE("linear solution conserves mass") {
    const Oracle2DConfig cfg;
    const double m0 = cfg.amp * cfg.sigma * cfg.sigma;
    // h0 has mass e^{A sigma^2} - 1 on the plane (over 2 pi).
    for (double t : {0.01, 0.04}) {
      const double m = quad::integrate([&](double r) { return r * linear_fp_solution(cfg, t, r); },
                                       0.0, 12.0, 1e-11);
      CHECK(m == doctest::Approx(std::expm1(m0)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(linear_fp_solution(cfg, 0.0, 1.0), DomainError);
  }

  TEST_CASE("tabulated solution matches direct quadrature") {
    const Oracle2DConfig cfg;
    const ExactSolution2D ex(cfg, 0.03);
    for (double r : {0.0, 0.5, 1.7, 3.0}) {
      CHECK(ex.h_lin(r) == doctest::Approx(linear_fp_solution(cfg, 0.03, r)).epsilon(1e-12));
      CHECK(ex.density(r) == doctest::Approx(exact_kq_density(cfg, 0.03, r)).epsilon(1e-10));
    }
    const double direct = quad::integrate([&](double r) { return r * exact_kq_density(cfg, 0.03, r); },
                                          0.0, 2.0, 1e-12);
    CHECK(ex.partial_mass_f(2.0) == doctest::Approx(direct).epsilon(1e-10));
  }

  TEST_CASE("small times approach the datum") {
    const Oracle2DConfig cfg;
    for (double r : {0.0, 0.8, 1.5}) {
      CHECK(linear_fp_solution(cfg, 1e-6, r) == doctest::Approx(h0_from_gaussian(cfg, r)).epsilon(1e-4));
    }
  }

  TEST_CASE("initial exact profile and tail mass") {
    const Oracle2DConfig cfg;
    const ExactSolution2D ex0(cfg, 0.0);
    CHECK(ex0.partial_mass_f(cfg.r1) == doctest::Approx(cfg.initial_mass()).epsilon(1e-10));
    const Grid g(101, cfg.initial_mass());
    const Profile s = exact_profile(ex0, g);
    CHECK(s.is_valid());
    // Uniform-in-mass nodes against the closed form N(s) = A sigma^2 (1 - e^{-s / 2 sigma^2}).
    const double a = cfg.amp * cfg.sigma * cfg.sigma;
    for (std::size_t i = 1; i + 1 < g.n_points(); i += 10) {
      const double expect = -2.0 * cfg.sigma * cfg.sigma * std::log1p(-g.node(i) / a);
      CHECK(s.values[i] == doctest::Approx(expect).epsilon(1e-9));
    }
    const ExactSolution2D ex(cfg, 0.04);
    CHECK(ex.tail_mass() > 0.0);
    CHECK(ex.tail_mass() < 1e-4);
  }
}
