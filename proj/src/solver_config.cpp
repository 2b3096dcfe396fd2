#include "condensate/solver_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "condensate/error.hpp"

namespace condensate {

std::string to_string(Integrator integrator) {
  return integrator == Integrator::BackwardEuler ? "backward_euler" : "crank_nicolson";
}

Integrator integrator_from_string(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "be" || s == "backward_euler" || s == "euler") return Integrator::BackwardEuler;
  if (s == "cn" || s == "crank_nicolson") return Integrator::CrankNicolson;
  throw DomainError("unknown integrator '" + name + "' (expected backward_euler or crank_nicolson)");
}

void SolverConfig::validate() const {
  params.validate();
  if (grid.n_points() < 3) throw DomainError("grid is not initialised");
  if (!(tau > 0.0)) throw DomainError("tau must be positive");
  if (!(t_final >= 0.0)) throw DomainError("t_final must be nonnegative");
  if (!(newton_tol > 0.0)) throw DomainError("newton_tol must be positive");
  if (newton_max_iter < 1) throw DomainError("newton_max_iter must be at least 1");
  if (eps_reg < 0.0 || delta_reg < 0.0) throw DomainError("regularisation must be nonnegative");
  if (!(condensate_threshold > 0.0)) throw DomainError("condensate threshold must be positive");
  if (params.dim > 3) throw DomainError("dimensions above 3 are not supported");
}

std::size_t SolverConfig::steps() const {
  return static_cast<std::size_t>(std::floor(t_final / tau * (1.0 + 1e-12) + 1e-9));
}

}  // namespace condensate
