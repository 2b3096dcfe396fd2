#include <vector>

#include "condensate/error.hpp"
#include "condensate/tridiagonal.hpp"
#include "doctest.h"

using namespace condensate;

TEST_SUITE("tridiagonal") {
  TEST_CASE("solve recovers a known solution") {
    Tridiagonal a(5);
    for (std::size_t i = 0; i < 5; ++i) {
      a.diag[i] = 4.0 + static_cast<double>(i);
      a.lower[i] = -1.0;
      a.upper[i] = -0.5 * static_cast<double>(i + 1);
    }
    const std::vector<double> x{1.0, -2.0, 0.5, 3.0, -1.0};
    std::vector<double> b = a.multiply(x);
    solve_tridiagonal(a, b);
    for (std::size_t i = 0; i < 5; ++i) CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-14));
  }

  TEST_CASE("entries outside the band are zero") {
    Tridiagonal a(4);
    a.diag = {1, 2, 3, 4};
    a.upper = {5, 6, 7, 0};
    a.lower = {0, 8, 9, 10};
    CHECK(a.at(0, 1) == 5.0);
    CHECK(a.at(2, 1) == 9.0);
    CHECK(a.at(0, 3) == 0.0);
  }

  TEST_CASE("vanishing pivot") {
    Tridiagonal a(3);
    a.diag = {0.0, 1.0, 1.0};
    std::vector<double> b{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(solve_tridiagonal(a, b), NonConvergence);
  }
}
