#pragma once

#include "fridge/machine.hpp"

// Closed-form steady state of the local master equation (lead Fermi factors
// taken at epsilon, measurement gamma_m D[n_R]) with equal tunnel rates gamma
// on both sides.

namespace fridge {

struct LocalFlowReport {
  double j_l = 0.0;
  double j_r = 0.0;
  double e_dot_m = 0.0;
  double a_const = 0.0;
  double gamma_m_threshold = 0.0;  // NaN when the sign condition fails
  double error_scale = 0.0;
};

class SignConditionViolated : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Flows, normalization constant and diagnostics. gamma_m_threshold is NaN
/// when delta and (epsilon - mu) do not have opposite signs.
LocalFlowReport local_flows_analytic(const DotParams& p, const LeadPair& leads, double gamma_m);

/// Smallest gamma_m with J_L >= 0. Throws SignConditionViolated when
/// delta (epsilon - mu) >= 0.
double refrigeration_threshold_local(const DotParams& p, const LeadPair& leads);

/// max_alpha gamma Omega / (2 T_alpha) f_alpha (1 - f_alpha), the first-order
/// size of the terms dropped by evaluating Fermi factors at epsilon.
double local_error_diagnostic(const DotParams& p, const LeadPair& leads);

}  // namespace fridge
