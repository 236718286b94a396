#include "fridge/local.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fridge/fermi.hpp"

namespace fridge {

namespace {

struct LocalRates {
  double f_l, f_r;
  double up_l, up_r, down_l, down_r;
  double up() const { return up_l + up_r; }
  double down() const { return down_l + down_r; }
};

LocalRates local_rates(const DotParams& p, const LeadPair& leads) {
  leads.validate();
  LocalRates r{};
  r.f_l = fermi_occupancy(p.epsilon(), leads.mu, leads.t_l);
  r.f_r = fermi_occupancy(p.epsilon(), leads.mu, leads.t_r);
  r.up_l = leads.gamma * r.f_l;
  r.up_r = leads.gamma * r.f_r;
  r.down_l = leads.gamma * (1.0 - r.f_l);
  r.down_r = leads.gamma * (1.0 - r.f_r);
  return r;
}

}  // namespace

LocalFlowReport local_flows_analytic(const DotParams& p, const LeadPair& leads, double gamma_m) {
  if (!(gamma_m >= 0.0)) throw InvalidParameter("measurement.gamma_m: must be >= 0");
  const LocalRates r = local_rates(p, leads);
  const double g2 = p.g() * p.g();
  const double d = p.delta();
  const double e_left = p.epsilon() + 0.5 * d - leads.mu;
  const double e_right = p.epsilon() - 0.5 * d - leads.mu;
  const double damp = gamma_m + r.down();

  LocalFlowReport out;
  out.a_const = g2 * damp * (r.down() + 2.0 * r.up()) / (leads.gamma * leads.gamma) +
                (1.0 - r.f_l * r.f_r) * (damp * damp + 4.0 * d * d);
  const double lead_part = r.down_l * e_right + r.down_r * e_left;
  const double j_plus = gamma_m * e_left + lead_part;
  const double j_minus = -gamma_m * e_right - lead_part;
  const double pref = (r.f_l - r.f_r) * g2 / out.a_const;
  out.j_l = pref * j_plus;
  out.j_r = pref * j_minus;
  out.e_dot_m = -pref * gamma_m * d;

  try {
    out.gamma_m_threshold = refrigeration_threshold_local(p, leads);
  } catch (const SignConditionViolated&) {
    out.gamma_m_threshold = std::numeric_limits<double>::quiet_NaN();
  }
  out.error_scale = local_error_diagnostic(p, leads);
  return out;
}

double refrigeration_threshold_local(const DotParams& p, const LeadPair& leads) {
  const double de = p.epsilon() - leads.mu;
  if (p.delta() * de >= 0.0) {
    throw SignConditionViolated("local threshold needs delta and epsilon - mu of opposite signs");
  }
  const LocalRates r = local_rates(p, leads);
  return (p.delta() * (r.up_r - r.up_l) - 2.0 * de * r.down()) / (p.delta() + 2.0 * de);
}

double local_error_diagnostic(const DotParams& p, const LeadPair& leads) {
  const LocalRates r = local_rates(p, leads);
  const double w = p.omega();
  const double left = leads.gamma * w / (2.0 * leads.t_l) * r.f_l * (1.0 - r.f_l);
  const double right = leads.gamma * w / (2.0 * leads.t_r) * r.f_r * (1.0 - r.f_r);
  return std::max(left, right);
}

}  // namespace fridge
