#include <cmath>
#include <vector>

#include "condensate/diagnostics.hpp"
#include "condensate/error.hpp"
#include "condensate/model.hpp"
#include "condensate/transform.hpp"
#include "doctest.h"

using namespace condensate;

namespace {

TraceSet exponential_trace(double alpha, double h_inf) {
  TraceSet tr;
  tr.h_infinity = h_inf;
  for (int k = 0; k <= 200; ++k) {
    const double t = 0.002 * k;
    tr.entropy.push_back({t, h_inf + 0.3 * std::exp(-alpha * t)});
  }
  return tr;
}

Profile profile_1d(std::vector<double> values, double mass) {
  Profile p;
  p.kind = ProfileKind::InverseCdf1D;
  p.params = {2.9, 1, 1.0};
  p.grid = Grid(values.size(), mass);
  p.values = std::move(values);
  return p;
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("decay rate is exact on exponentials") {
    for (double alpha : {5.0, 23.7, 35.3}) {
      CHECK(decay_rate(exponential_trace(alpha, -1.9), 0.05, 0.35) ==
            doctest::Approx(alpha).epsilon(1e-10));
    }
  }

  TEST_CASE("decay rate window errors") {
    const TraceSet tr = exponential_trace(10.0, 0.0);
    CHECK_THROWS_AS(decay_rate(tr, 0.3, 0.3001), DomainError);
    TraceSet flat = tr;
    flat.h_infinity = 1.0;
    CHECK_THROWS_AS(decay_rate(flat, 0.05, 0.35), DomainError);
  }

  TEST_CASE("condensate size counts the flat set") {
    // Three interior zeros span two cells.
    const Profile u = profile_1d({-1.0, -0.5, 0.0, 0.0, 0.0, 0.5, 1.0}, 3.0);
    CHECK(condensate_size(u, 1e-6) == doctest::Approx(2.0 * 0.5));
    const Profile none = profile_1d({-1.0, -0.5, 0.0, 0.5, 1.0}, 1.0);
    CHECK(condensate_size(none, 1e-6) == 0.0);

    Profile s;
    s.kind = ProfileKind::RadialNormalized;
    s.params = {1.0, 3, 1.0};
    s.grid = Grid(6, 1.0);
    s.values = {0.0, 0.0, 0.0, 0.3, 0.6, 1.0};
    CHECK(condensate_size(s, 1e-10) == doctest::Approx(2.0 * 0.2));
  }

  TEST_CASE("entropy of the minimiser is the smallest") {
    const ModelParams p{2.9, 1, 1.0};
    const Grid g(401, 3.0);
    const Profile inf = minimizer_profile(entropy_minimizer(3.0, p), g);
    const DensityFn f = [](double v) { return (3.0 / 1.2) * std::exp(-v * v / 0.72); };
    const Grid g2(401, density_mass(f, p, 4000));
    const Profile other = inverse_cdf_from_density(f, p, g2);
    const Profile inf2 = minimizer_profile(entropy_minimizer(g2.mass_total(), p), g2);
    CHECK(entropy(other) > entropy(inf2));
    CHECK(std::isfinite(entropy(inf)));
  }

  TEST_CASE("profile fit models") {
    CHECK(default_profile_model(1) == ProfileModel::Difference);
    CHECK(default_profile_model(3) == ProfileModel::Ratio);
    const Profile u = profile_1d({-1.0, -0.5, 0.0, 0.0, 0.0, 0.5, 1.0}, 3.0);
    CHECK_THROWS_AS(blowup_profile_fit(u, 0.0, 0.2), DomainError);
  }
}
