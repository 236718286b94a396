#pragma once

#include <array>

#include "fridge/liouvillian.hpp"
#include "fridge/model.hpp"
#include "fridge/quadrature.hpp"

// Quantum point contact used as a continuous charge detector on the right dot.
//
// Transparencies are energy independent. The drain sits at chemical potential
// 0, the source at mu_m, both at temperature t_m. Channel labels follow the
// energy change of the dots: `plus` is the jump |-> -> |+> (dots gain omega),
// `minus` the reverse.

namespace fridge {

struct QpcParams {
  double t0 = 0.5;    // transparency, right dot empty
  double t1 = 0.25;   // transparency, right dot occupied
  double mu_m = 0.0;  // source-drain bias
  double t_m = 1.0;   // source and drain temperature

  /// (sqrt(t0) - sqrt(t1))^2
  double t_meas() const;
  void validate() const;
};

/// Energy integrals of the forward (source -> drain) and backward occupation
/// factors for one transition frequency omega:
///   F+(E) = f_S(E) (1 - f_D(E - omega))
///   F-(E) = (1 - f_S(E)) f_D(E + omega)
struct ChannelIntegrals {
  double omega = 0.0;
  double forward = 0.0;
  double backward = 0.0;
  double forward_energy = 0.0;   // int E F+(E) dE
  double backward_energy = 0.0;  // int E F-(E) dE

  double net() const { return forward - backward; }
  double total() const { return forward + backward; }
};

struct QpcChannels {
  ChannelIntegrals elastic;  // omega = 0
  ChannelIntegrals plus;     // omega = +Omega
  ChannelIntegrals minus;    // omega = -Omega

  std::array<const ChannelIntegrals*, 3> all() const { return {&elastic, &plus, &minus}; }
};

struct RateTable {
  double zero = 0.0;
  double plus = 0.0;
  double minus = 0.0;
};

/// Integration window [-W, W + mu_m + |omega|] with W = 40 max(t_m, |omega|, mu_m).
std::pair<double, double> integration_window(const QpcParams& q, double omega);

ChannelIntegrals channel_integrals(const QpcParams& q, double omega,
                                   const QuadratureOptions& opts = {});
QpcChannels qpc_channels(const QpcParams& q, double omega_dot,
                         const QuadratureOptions& opts = {});

/// gamma_QPC(omega) = t_meas * int [F+(E) + F-(E)] dE.
double qpc_rate(const QpcParams& q, double omega, const QuadratureOptions& opts = {});
RateTable qpc_rates(const QpcParams& q, const QpcChannels& ch);

/// Kraus operators of a single electron transfer, eigenbasis:
/// K_0 = sqrt(t0) - sqrt(t_meas) n_0, K_{+/-} = sqrt(t_meas) n_{+/-}.
struct KrausSet {
  Matrix3c elastic;
  Matrix3c plus;
  Matrix3c minus;
};
KrausSet kraus_operators(const DotParams& p, const QpcParams& q);

/// Channel weights Tr{K_w^dag K_w rho} for w = 0, +Omega, -Omega.
struct ChannelWeights {
  double elastic = 0.0;
  double plus = 0.0;
  double minus = 0.0;
};
ChannelWeights channel_weights(const DotParams& p, const QpcParams& q, const Matrix3c& rho);

Superoperator qpc_lindbladian(const DotParams& p, const QpcParams& q, const QpcChannels& ch);
Superoperator qpc_lindbladian(const DotParams& p, const QpcParams& q,
                              const QuadratureOptions& opts = {});

double qpc_current(const DotParams& p, const QpcParams& q, const QpcChannels& ch,
                   const Matrix3c& rho);
double qpc_current(const DotParams& p, const QpcParams& q, const Matrix3c& rho,
                   const QuadratureOptions& opts = {});

struct QpcEnergetics {
  double p_m = 0.0;  // electric power mu_m * I_QPC
  double j_s = 0.0;  // heat leaving the source
  double j_d = 0.0;  // heat leaving the drain
  double j_m = 0.0;  // j_s + j_d
};

QpcEnergetics qpc_power_and_heat(const DotParams& p, const QpcParams& q, const QpcChannels& ch,
                                 const Matrix3c& rho);
QpcEnergetics qpc_power_and_heat(const DotParams& p, const QpcParams& q, const Matrix3c& rho,
                                 const QuadratureOptions& opts = {});

/// Returns t1 such that gamma_QPC(0) = target_gamma at (mu_m, t_m) for fixed t0.
/// gamma_QPC(0) is linear in t_meas, so the inversion is exact.
double calibrate_t1(double t0, double target_gamma, double mu_m, double t_m,
                    const QuadratureOptions& opts = {});

}  // namespace fridge
