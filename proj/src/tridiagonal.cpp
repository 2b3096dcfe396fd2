#include "condensate/tridiagonal.hpp"

#include <cmath>
#include <string>

#include "condensate/error.hpp"

namespace condensate {

double Tridiagonal::at(std::size_t i, std::size_t j) const {
  if (i == j) return diag[i];
  if (j + 1 == i) return lower[i];
  if (i + 1 == j) return upper[i];
  return 0.0;
}

std::vector<double> Tridiagonal::multiply(std::span<const double> x) const {
  const std::size_t m = size();
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += lower[i] * x[i - 1];
    if (i + 1 < m) s += upper[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

void solve_tridiagonal(const Tridiagonal& a, std::span<double> rhs) {
  const std::size_t m = a.size();
  if (m == 0) return;
  std::vector<double> c(m);
  double pivot = a.diag[0];
  for (std::size_t i = 0;; ++i) {
    if (!(std::abs(pivot) >= kMinPivot)) {
      throw NonConvergence("singular tridiagonal pivot at row " + std::to_string(i),
                           std::abs(pivot));
    }
    c[i] = i + 1 < m ? a.upper[i] / pivot : 0.0;
    rhs[i] = (i > 0 ? rhs[i] - a.lower[i] * rhs[i - 1] : rhs[i]) / pivot;
    if (i + 1 == m) break;
    pivot = a.diag[i + 1] - a.lower[i + 1] * c[i];
  }
  for (std::size_t i = m - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

}  // namespace condensate
