#include <cmath>
#include <stdexcept>

#include "ulcm/solvers.hpp"

namespace ulcm {

double inexact_lipschitz(double delta, double nu, double M_nu) {
  if (!(delta > 0.0)) throw std::invalid_argument("inexact_lipschitz: delta must be positive");
  if (!(nu >= 0.0 && nu <= 1.0)) throw std::invalid_argument("inexact_lipschitz: nu must be in [0, 1]");
  if (!(M_nu >= 0.0)) throw std::invalid_argument("inexact_lipschitz: M_nu must be non-negative");
  const double exponent = (1.0 - nu) / (1.0 + nu);
  if (exponent == 0.0) return M_nu;  // 0^0 = 1 when M_nu = 0
  return std::pow(exponent * M_nu / delta, exponent) * M_nu;
}

StepCoefficients step_coefficients(double alpha_k, double L_k, double L_next) {
  if (!(L_k > 0.0) || !(L_next > 0.0))
    throw std::invalid_argument("step_coefficients: L must be positive");
  if (!(alpha_k >= 0.0)) throw std::invalid_argument("step_coefficients: alpha must be non-negative");
  // 1/(2L') + sqrt(1/(4L'^2) + alpha^2 L/L') with 1/(2L') factored out, which
  // stays finite for L' down to the smallest normal double.
  const double A = alpha_k * alpha_k * L_k;
  const double alpha = (1.0 + std::sqrt(1.0 + 4.0 * A * L_next)) / (2.0 * L_next);
  const double tau = 1.0 / (alpha * L_next);
  if (!std::isfinite(alpha) || !std::isfinite(tau) || !(alpha > 0.0))
    throw NonFiniteError("step_coefficients: non-finite coefficient");
  return {alpha, std::min(tau, 1.0)};
}

bool ulcm_accept_test(double alpha_next, double L_next, double tau, double f_x_next, double f_y_next,
                      const Vector& grad_x_next, const Vector& z_k, const Vector& z_next, double eps) {
  require_same_size(grad_x_next, z_k);
  require_same_size(z_k, z_next);
  double inner = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < z_k.size(); ++i) {
    const double dz = z_k[i] - z_next[i];
    inner += grad_x_next[i] * dz;
    sq += dz * dz;
  }
  const double lhs = alpha_next * inner - 0.5 * sq;
  const double rhs = alpha_next * alpha_next * L_next * (f_x_next - f_y_next + 0.5 * tau * eps);
  return lhs <= rhs;
}

double dual_bound(const UniversalState& state, double theta) {
  if (!(state.A > 0.0)) throw std::domain_error("dual_bound: A_m must be positive");
  if (!(theta > 0.0)) throw std::invalid_argument("dual_bound: theta must be positive");
  require_same_size(state.z, state.z0);
  double g_dot_z0 = 0.0, g_sq = 0.0;
  for (std::size_t i = 0; i < state.z.size(); ++i) {
    const double gi = state.z0[i] - state.z[i];
    g_dot_z0 += gi * state.z0[i];
    g_sq += gi * gi;
  }
  return (state.dual_constant + g_dot_z0 - std::sqrt(2.0 * theta) * std::sqrt(g_sq)) / state.A;
}

}  // namespace ulcm
