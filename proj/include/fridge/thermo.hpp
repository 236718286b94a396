#pragma once

#include <optional>

#include "fridge/liouvillian.hpp"

namespace fridge {

/// Steady-state energetics of one operating point. Flows are positive when
/// they enter the double dot (or the apparatus, for j_m).
struct FlowReport {
  double j_l = 0.0;
  double j_r = 0.0;
  double e_dot_m = 0.0;
  double p_m = 0.0;
  std::optional<double> j_m;
  std::optional<double> j_s;
  std::optional<double> j_d;
  std::optional<double> xi;
  std::optional<double> eta_app;
  std::optional<double> eta_hybrid;
  std::optional<double> eta_carnot;
  std::optional<double> sigma;
  double first_law_residual = 0.0;

  /// max(|j_l|, |j_r|, |e_dot_m|, floor)
  double scale(double floor = 1e-300) const;
};

/// Tolerance scale max(|J_L|, |J_R|, |E_M|, gamma g 1e-6).
double flow_scale(double j_l, double j_r, double e_dot_m, double gamma, double g);

/// Tr{(H - mu N) L_alpha rho}.
double lead_heat_flow(const Matrix3c& h, double mu, const Superoperator& l_alpha,
                      const Matrix3c& rho);

/// Tr{H L_M rho}.
double measurement_energy_flow(const Matrix3c& h, const Superoperator& l_m, const Matrix3c& rho);

/// sum_w w gamma(w) <n_w^dag n_w> with n_w the eigenoperator components of the
/// right-dot charge; rates ordered (0, +Omega, -Omega).
double measurement_energy_flow_eigen(const DotParams& p, double rate_zero, double rate_plus,
                                     double rate_minus, const Matrix3c& rho);

/// J_L / E_M; absent when |E_M| < 1e-14 scale.
std::optional<double> apparent_efficiency(double j_l, double e_dot_m, double scale);

/// J_L / [P_M Theta(P_M) + J_M (1 - T_R/T_M) Theta(J_M)]; absent when the
/// denominator is <= 0.
std::optional<double> hybrid_cop(double j_l, double p_m, double j_m, double t_r, double t_m);

/// -J_L/T_L - J_R/T_R - J_M/T_M.
double entropy_production(double j_l, double j_r, double j_m, double t_l, double t_r, double t_m);

/// J_M / P_M; absent when |P_M| < 1e-14 scale.
std::optional<double> fuel_ratio(double j_m, double p_m, double scale);

/// T_L / (T_R - T_L); absent when T_R <= T_L.
std::optional<double> carnot_cop(double t_l, double t_r);

}  // namespace fridge
