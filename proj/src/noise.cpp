#include "fridge/noise.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace fridge {

namespace {

constexpr int pop(int i) { return 4 * i; }

}  // namespace

Eigen::Vector2d PopulationDynamics::stationary() const {
  return -a_matrix.partialPivLu().solve(b_vector);
}

PopulationDynamics regression_generator(const Superoperator& l) {
  const Matrix9c& m = l.matrix;
  const double scale = norm_inf(l);
  double leak = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 9; ++k) {
      if (k % 4 == 0) {
        leak = std::max(leak, std::abs(m(pop(i), k).imag()));
      } else {
        leak = std::max(leak, std::abs(m(pop(i), k)));
      }
    }
  }
  if (leak > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "population dynamics do not close: coherence coupling " << leak;
    throw StructureError(msg.str());
  }

  PopulationDynamics pd;
  for (int i = 0; i < 2; ++i) {
    const double from_empty = m(pop(i + 1), pop(0)).real();
    pd.b_vector(i) = from_empty;
    for (int j = 0; j < 2; ++j) {
      pd.a_matrix(i, j) = m(pop(i + 1), pop(j + 1)).real() - from_empty;
    }
  }
  const Eigen::Vector2cd ev = pd.a_matrix.eigenvalues();
  const double worst = std::max(ev(0).real(), ev(1).real());
  if (!(worst < -1e-13 * scale)) {
    std::ostringstream msg;
    msg << "population dynamics not stable: eigenvalue real part " << worst;
    throw UnstableDynamics(msg.str());
  }
  return pd;
}

CurrentCoefficients current_activity_coefficients(const DotParams& p, const QpcParams& q,
                                                  const QpcChannels& ch) {
  const double c2 = std::pow(std::cos(p.theta()), 2);
  const double s2 = std::pow(std::sin(p.theta()), 2);
  const double r0 = std::sqrt(q.t0);
  const double r1 = std::sqrt(q.t1);
  const double hop = q.t_meas() * c2 * s2;
  const double stay_plus = std::pow(r0 * c2 + r1 * s2, 2);
  const double stay_minus = std::pow(r0 * s2 + r1 * c2, 2);

  CurrentCoefficients out;
  out.i0 = q.t0 * ch.elastic.net();
  out.i_plus_stay = stay_plus * ch.elastic.net();
  out.i_plus_hop = hop * ch.minus.net();
  out.i_minus_stay = stay_minus * ch.elastic.net();
  out.i_minus_hop = hop * ch.plus.net();
  out.i_plus = out.i_plus_stay + out.i_plus_hop;
  out.i_minus = out.i_minus_stay + out.i_minus_hop;
  out.a0 = q.t0 * ch.elastic.total();
  out.a_plus = stay_plus * ch.elastic.total() + hop * ch.minus.total();
  out.a_minus = stay_minus * ch.elastic.total() + hop * ch.plus.total();
  return out;
}

CurrentCoefficients current_activity_coefficients(const DotParams& p, const QpcParams& q,
                                                  const QuadratureOptions& opts) {
  return current_activity_coefficients(p, q, qpc_channels(q, p.omega(), opts));
}

ShotNoise shot_noise_zero_frequency(const PopulationDynamics& pd, const CurrentCoefficients& c,
                                    const Matrix3c& rho_ss) {
  const double p_plus = rho_ss(state::plus, state::plus).real();
  const double p_minus = rho_ss(state::minus, state::minus).real();
  const Eigen::Vector2d pss(p_plus, p_minus);
  const Eigen::Vector2d i_hat(c.i_plus - c.i0, c.i_minus - c.i0);
  const Eigen::Vector2d a_hat(c.a_plus - c.a0, c.a_minus - c.a0);

  ShotNoise out;
  out.i_ss = c.i0 + i_hat.dot(pss);
  out.a_ss = c.a0 + a_hat.dot(pss);
  const Eigen::Vector2d after_jump(p_plus * c.i_plus_stay + p_minus * c.i_minus_hop,
                                   p_minus * c.i_minus_stay + p_plus * c.i_plus_hop);
  const Eigen::Vector2d x = after_jump - out.i_ss * pss;
  out.s_ii_0 = out.a_ss - 2.0 * i_hat.dot(pd.a_matrix.partialPivLu().solve(x));
  return out;
}

JumpSuperoperators jump_superoperators(const DotParams& p, const QpcParams& q,
                                       const QpcChannels& ch) {
  const KrausSet k = kraus_operators(p, q);
  JumpSuperoperators out;
  const Superoperator s0 = sandwich(k.elastic);
  const Superoperator sp = sandwich(k.plus);
  const Superoperator sm = sandwich(k.minus);
  out.forward = ch.elastic.forward * s0 + ch.plus.forward * sp + ch.minus.forward * sm;
  out.backward = ch.elastic.backward * s0 + ch.plus.backward * sp + ch.minus.backward * sm;
  return out;
}

double signal_separation(const DotParams& p, const QpcParams& q, const QpcChannels& ch) {
  const Matrix3c empty_right = to_eigenbasis(p, ket_bra(1, 1));
  const Matrix3c occupied_right = to_eigenbasis(p, ket_bra(2, 2));
  return qpc_current(p, q, ch, empty_right) - qpc_current(p, q, ch, occupied_right);
}

NoiseReport signal_to_noise(const DotParams& p, const QpcParams& q, const QpcChannels& ch,
                            const PopulationDynamics& pd, const CurrentCoefficients& c,
                            const Matrix3c& rho_ss) {
  const ShotNoise sn = shot_noise_zero_frequency(pd, c, rho_ss);
  NoiseReport out;
  out.i_ss = sn.i_ss;
  out.a_ss = sn.a_ss;
  out.s_ii_0 = sn.s_ii_0;
  out.delta_i = signal_separation(p, q, ch);
  out.snr = sn.s_ii_0 > 0.0 ? out.delta_i * out.delta_i / sn.s_ii_0 : 0.0;
  return out;
}

NoiseReport compute_noise(const SolvedMachine& m) {
  if (!m.spec.uses_qpc() || !m.channels) {
    throw InvalidParameter("noise: requires the QPC detector");
  }
  const QpcParams& q = std::get<QpcMeasurement>(m.spec.measurement).qpc;
  const PopulationDynamics pd = regression_generator(m.total);
  const CurrentCoefficients c = current_activity_coefficients(m.spec.dot, q, *m.channels);
  return signal_to_noise(m.spec.dot, q, *m.channels, pd, c, m.rho.matrix());
}

}  // namespace fridge
