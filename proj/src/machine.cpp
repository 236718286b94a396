#include "fridge/machine.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace fridge {

void LeadPair::validate() const {
  if (!std::isfinite(mu)) throw InvalidParameter("leads.mu: must be finite");
  if (!(t_l > 0.0)) throw InvalidParameter("leads.t_l: must be > 0");
  if (!(t_r > 0.0)) throw InvalidParameter("leads.t_r: must be > 0");
  if (!(gamma > 0.0)) throw InvalidParameter("leads.gamma: must be > 0");
}

SolvedMachine solve(const MachineSpec& spec) {
  spec.leads.validate();
  const DotParams& p = spec.dot;
  const bool local = spec.regime == Regime::Local;

  Superoperator left, right, meas;
  std::optional<QpcChannels> channels;
  RateTable rates;
  if (local) {
    left = lead_lindbladian_local(p, spec.leads.left(), Side::Left);
    right = lead_lindbladian_local(p, spec.leads.right(), Side::Right);
  } else {
    left = lead_lindbladian_global(p, spec.leads.left(), Side::Left);
    right = lead_lindbladian_global(p, spec.leads.right(), Side::Right);
  }

  if (const auto* ideal = std::get_if<IdealMeasurement>(&spec.measurement)) {
    meas = local ? measurement_lindbladian_local(p, ideal->gamma_m)
                 : measurement_lindbladian_ideal(p, ideal->gamma_m);
    rates = {ideal->gamma_m, ideal->gamma_m, ideal->gamma_m};
  } else {
    if (local) throw InvalidParameter("regime: the local regime supports only the ideal detector");
    const QpcParams& q = std::get<QpcMeasurement>(spec.measurement).qpc;
    q.validate();
    channels = qpc_channels(q, p.omega(), spec.quadrature);
    meas = qpc_lindbladian(p, q, *channels);
    rates = qpc_rates(q, *channels);
  }

  const Matrix3c h = hamiltonian_matrix(p, BasisKind::Eigen);
  const std::array<Superoperator, 3> parts = {left, right, meas};
  const Superoperator total = assemble_liouvillian(h, parts);
  DensityMatrix rho = steady_state(total);
  return {spec, h, left, right, meas, total, std::move(rho), channels, rates};
}

FlowReport compute_flows(const SolvedMachine& m) {
  const MachineSpec& spec = m.spec;
  const Matrix3c& rho = m.rho.matrix();
  FlowReport r;
  r.j_l = lead_heat_flow(m.hamiltonian, spec.leads.mu, m.left, rho);
  r.j_r = lead_heat_flow(m.hamiltonian, spec.leads.mu, m.right, rho);
  r.e_dot_m = measurement_energy_flow(m.hamiltonian, m.measurement, rho);
  r.first_law_residual = r.j_l + r.j_r + r.e_dot_m;

  if (spec.regime == Regime::Global) {
    const double via_rates =
        measurement_energy_flow_eigen(spec.dot, m.rates.zero, m.rates.plus, m.rates.minus, rho);
    const double tol = 1e-12 * std::max({std::abs(r.e_dot_m), std::abs(via_rates),
                                         spec.leads.gamma * spec.dot.g() * 1e-6});
    if (std::abs(via_rates - r.e_dot_m) > tol) {
      throw NumericalFailure("measurement energy flow: superoperator and rate evaluations disagree");
    }
  }

  const double scale =
      flow_scale(r.j_l, r.j_r, r.e_dot_m, spec.leads.gamma, spec.dot.g());
  r.eta_app = apparent_efficiency(r.j_l, r.e_dot_m, scale);
  r.eta_carnot = carnot_cop(spec.leads.t_l, spec.leads.t_r);

  if (spec.uses_qpc()) {
    const QpcParams& q = std::get<QpcMeasurement>(spec.measurement).qpc;
    const QpcEnergetics e = qpc_power_and_heat(spec.dot, q, *m.channels, rho);
    r.p_m = e.p_m;
    r.j_s = e.j_s;
    r.j_d = e.j_d;
    r.j_m = e.j_m;
    r.xi = fuel_ratio(e.j_m, e.p_m, scale);
    r.eta_hybrid = hybrid_cop(r.j_l, e.p_m, e.j_m, spec.leads.t_r, q.t_m);
    r.sigma = entropy_production(r.j_l, r.j_r, e.j_m, spec.leads.t_l, spec.leads.t_r, q.t_m);
  }
  return r;
}

}  // namespace fridge
