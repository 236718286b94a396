#include "fridge/thermo.hpp"

#include <algorithm>
#include <cmath>

namespace fridge {

double FlowReport::scale(double floor) const {
  return std::max({std::abs(j_l), std::abs(j_r), std::abs(e_dot_m), floor});
}

double flow_scale(double j_l, double j_r, double e_dot_m, double gamma, double g) {
  return std::max({std::abs(j_l), std::abs(j_r), std::abs(e_dot_m), gamma * g * 1e-6});
}

double lead_heat_flow(const Matrix3c& h, double mu, const Superoperator& l_alpha,
                      const Matrix3c& rho) {
  const Matrix3c grand = h - mu * number_operator();
  return (grand * l_alpha.apply(rho)).trace().real();
}

double measurement_energy_flow(const Matrix3c& h, const Superoperator& l_m, const Matrix3c& rho) {
  return (h * l_m.apply(rho)).trace().real();
}

double measurement_energy_flow_eigen(const DotParams& p, double rate_zero, double rate_plus,
                                     double rate_minus, const Matrix3c& rho) {
  (void)rate_zero;  // elastic channel carries no energy
  const ChargeComponents n = charge_components(p);
  auto occupation = [&](const Matrix3c& x) { return (x.adjoint() * x * rho).trace().real(); };
  const double w = p.omega();
  return w * rate_plus * occupation(n.n_plus) - w * rate_minus * occupation(n.n_minus);
}

std::optional<double> apparent_efficiency(double j_l, double e_dot_m, double scale) {
  if (std::abs(e_dot_m) < 1e-14 * scale) return std::nullopt;
  return j_l / e_dot_m;
}

std::optional<double> hybrid_cop(double j_l, double p_m, double j_m, double t_r, double t_m) {
  double denom = 0.0;
  if (p_m > 0.0) denom += p_m;
  if (j_m > 0.0) denom += j_m * (1.0 - t_r / t_m);
  if (!(denom > 0.0)) return std::nullopt;
  return j_l / denom;
}

double entropy_production(double j_l, double j_r, double j_m, double t_l, double t_r,
                          double t_m) {
  return -j_l / t_l - j_r / t_r - j_m / t_m;
}

std::optional<double> fuel_ratio(double j_m, double p_m, double scale) {
  if (std::abs(p_m) < 1e-14 * scale) return std::nullopt;
  return j_m / p_m;
}

std::optional<double> carnot_cop(double t_l, double t_r) {
  if (!(t_r > t_l)) return std::nullopt;
  return t_l / (t_r - t_l);
}

}  // namespace fridge
