#include "fridge/qpc.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fridge/fermi.hpp"

namespace fridge {

namespace {

constexpr double kDrainMu = 0.0;

// Integrate over the window, split at the places where the occupation factors
// switch so that no feature falls between quadrature nodes.
double integrate_split(const std::function<double(double)>& f, const QpcParams& q,
                       double omega, const QuadratureOptions& opts) {
  const auto [lo, hi] = integration_window(q, omega);
  const double w = std::abs(omega);
  std::vector<double> cuts = {lo, -w, 0.0, w, q.mu_m - w, q.mu_m, q.mu_m + w, hi};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = std::max(cuts[i], lo);
    const double b = std::min(cuts[i + 1], hi);
    if (b > a) sum += integrate(f, a, b, opts).value;
  }
  return sum;
}

}  // namespace

double QpcParams::t_meas() const {
  const double d = std::sqrt(t0) - std::sqrt(t1);
  return d * d;
}

void QpcParams::validate() const {
  if (!(t0 > 0.0 && t0 <= 1.0)) throw InvalidParameter("measurement.t0: must be in (0, 1]");
  if (!(t1 >= 0.0 && t1 <= t0)) throw InvalidParameter("measurement.t1: must be in [0, t0]");
  if (!(mu_m >= 0.0) || !std::isfinite(mu_m)) {
    throw InvalidParameter("measurement.mu_m: must be >= 0");
  }
  if (!(t_m > 0.0) || !std::isfinite(t_m)) throw InvalidParameter("measurement.t_m: must be > 0");
}

std::pair<double, double> integration_window(const QpcParams& q, double omega) {
  const double w = 40.0 * std::max({q.t_m, std::abs(omega), q.mu_m});
  return {-w, w + q.mu_m + std::abs(omega)};
}

ChannelIntegrals channel_integrals(const QpcParams& q, double omega,
                                   const QuadratureOptions& opts) {
  q.validate();
  auto fwd = [&](double e) {
    return fermi_occupancy(e, q.mu_m, q.t_m) * fermi_hole(e - omega, kDrainMu, q.t_m);
  };
  auto bwd = [&](double e) {
    return fermi_hole(e, q.mu_m, q.t_m) * fermi_occupancy(e + omega, kDrainMu, q.t_m);
  };
  ChannelIntegrals out;
  out.omega = omega;
  out.forward = integrate_split(fwd, q, omega, opts);
  out.backward = integrate_split(bwd, q, omega, opts);
  out.forward_energy = integrate_split([&](double e) { return e * fwd(e); }, q, omega, opts);
  out.backward_energy = integrate_split([&](double e) { return e * bwd(e); }, q, omega, opts);
  return out;
}

QpcChannels qpc_channels(const QpcParams& q, double omega_dot, const QuadratureOptions& opts) {
  return {channel_integrals(q, 0.0, opts), channel_integrals(q, omega_dot, opts),
          channel_integrals(q, -omega_dot, opts)};
}

double qpc_rate(const QpcParams& q, double omega, const QuadratureOptions& opts) {
  q.validate();
  auto both = [&](double e) {
    return fermi_occupancy(e, q.mu_m, q.t_m) * fermi_hole(e - omega, kDrainMu, q.t_m) +
           fermi_hole(e, q.mu_m, q.t_m) * fermi_occupancy(e + omega, kDrainMu, q.t_m);
  };
  return q.t_meas() * integrate_split(both, q, omega, opts);
}

RateTable qpc_rates(const QpcParams& q, const QpcChannels& ch) {
  const double tm = q.t_meas();
  return {tm * ch.elastic.total(), tm * ch.plus.total(), tm * ch.minus.total()};
}

KrausSet kraus_operators(const DotParams& p, const QpcParams& q) {
  const ChargeComponents n = charge_components(p);
  const double root_meas = std::sqrt(q.t_meas());
  return {std::sqrt(q.t0) * Matrix3c::Identity() - root_meas * n.n_0, root_meas * n.n_plus,
          root_meas * n.n_minus};
}

ChannelWeights channel_weights(const DotParams& p, const QpcParams& q, const Matrix3c& rho) {
  const KrausSet k = kraus_operators(p, q);
  auto weight = [&](const Matrix3c& op) { return (op.adjoint() * op * rho).trace().real(); };
  return {weight(k.elastic), weight(k.plus), weight(k.minus)};
}

Superoperator qpc_lindbladian(const DotParams& p, const QpcParams& q, const QpcChannels& ch) {
  const ChargeComponents n = charge_components(p);
  const RateTable r = qpc_rates(q, ch);
  return r.zero * dissipator(n.n_0) + r.plus * dissipator(n.n_plus) +
         r.minus * dissipator(n.n_minus);
}

Superoperator qpc_lindbladian(const DotParams& p, const QpcParams& q,
                              const QuadratureOptions& opts) {
  return qpc_lindbladian(p, q, qpc_channels(q, p.omega(), opts));
}

double qpc_current(const DotParams& p, const QpcParams& q, const QpcChannels& ch,
                   const Matrix3c& rho) {
  const ChannelWeights w = channel_weights(p, q, rho);
  return w.elastic * ch.elastic.net() + w.plus * ch.plus.net() + w.minus * ch.minus.net();
}

double qpc_current(const DotParams& p, const QpcParams& q, const Matrix3c& rho,
                   const QuadratureOptions& opts) {
  return qpc_current(p, q, qpc_channels(q, p.omega(), opts), rho);
}

QpcEnergetics qpc_power_and_heat(const DotParams& p, const QpcParams& q, const QpcChannels& ch,
                                 const Matrix3c& rho) {
  const ChannelWeights w = channel_weights(p, q, rho);
  QpcEnergetics out;
  auto accumulate = [&](double weight, const ChannelIntegrals& c) {
    const double source = (c.forward_energy - c.backward_energy) - q.mu_m * c.net();
    const double drain = -((c.forward_energy - c.omega * c.forward) -
                           (c.backward_energy + c.omega * c.backward));
    out.j_s += weight * source;
    out.j_d += weight * drain;
    out.p_m += weight * q.mu_m * c.net();
  };
  accumulate(w.elastic, ch.elastic);
  accumulate(w.plus, ch.plus);
  accumulate(w.minus, ch.minus);
  out.j_m = out.j_s + out.j_d;
  return out;
}

QpcEnergetics qpc_power_and_heat(const DotParams& p, const QpcParams& q, const Matrix3c& rho,
                                 const QuadratureOptions& opts) {
  return qpc_power_and_heat(p, q, qpc_channels(q, p.omega(), opts), rho);
}

double calibrate_t1(double t0, double target_gamma, double mu_m, double t_m,
                    const QuadratureOptions& opts) {
  if (!(target_gamma > 0.0)) throw InvalidParameter("calibration gamma_m must be > 0");
  QpcParams probe{t0, 0.0, mu_m, t_m};
  probe.validate();
  const double per_unit = channel_integrals(probe, 0.0, opts).total();
  const double t_meas = target_gamma / per_unit;
  if (t_meas > t0) {
    throw InvalidParameter("calibration: target gamma_m unreachable with t0 (needs t_meas > t0)");
  }
  const double d = std::sqrt(t0) - std::sqrt(t_meas);
  return d * d;
}

}  // namespace fridge
