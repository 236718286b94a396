#pragma once

#include <Eigen/Dense>

#include "fridge/liouvillian.hpp"
#include "fridge/machine.hpp"
#include "fridge/qpc.hpp"

// Zero-frequency noise of the detector current from the quantum regression
// theorem restricted to the populations of |+> and |->.

namespace fridge {

/// Ratio between the noise returned by shot_noise_zero_frequency and the
/// two-sided integral of the current autocorrelation. Checked by the test
/// suite against a direct time-domain integration.
inline constexpr double kNoiseConventionFactor = 1.0;

/// d/dt (p+, p-) = A (p+, p-) + B after eliminating p_00 through the trace.
struct PopulationDynamics {
  Eigen::Matrix2d a_matrix = Eigen::Matrix2d::Zero();
  Eigen::Vector2d b_vector = Eigen::Vector2d::Zero();

  /// -A^{-1} B
  Eigen::Vector2d stationary() const;
};

/// Raised when populations couple to coherences, i.e. the generator is not of
/// the secular (global) form the regression formula assumes.
class StructureError : public NumericalFailure {
public:
  using NumericalFailure::NumericalFailure;
};

class UnstableDynamics : public NumericalFailure {
public:
  using NumericalFailure::NumericalFailure;
};

PopulationDynamics regression_generator(const Superoperator& l);

/// Current (i) and activity (a) carried by each eigenstate. The i_k / a_k
/// values are the traces Tr{I[Pi_k]}; the stay/hop split separates the part
/// that leaves the dots in the same eigenstate from the part that moves them
/// to the other one.
struct CurrentCoefficients {
  double i0 = 0.0, i_plus = 0.0, i_minus = 0.0;
  double a0 = 0.0, a_plus = 0.0, a_minus = 0.0;
  double i_plus_stay = 0.0, i_plus_hop = 0.0;
  double i_minus_stay = 0.0, i_minus_hop = 0.0;
};

CurrentCoefficients current_activity_coefficients(const DotParams& p, const QpcParams& q,
                                                  const QpcChannels& ch);
CurrentCoefficients current_activity_coefficients(const DotParams& p, const QpcParams& q,
                                                  const QuadratureOptions& opts = {});

struct ShotNoise {
  double s_ii_0 = 0.0;
  double i_ss = 0.0;
  double a_ss = 0.0;
};

/// s_II(0) = A_ss - 2 i_hat . A^{-1} (C - I_ss P_ss), where C holds the
/// populations of I[rho_ss] and i_hat = (i+ - i0, i- - i0).
ShotNoise shot_noise_zero_frequency(const PopulationDynamics& pd, const CurrentCoefficients& c,
                                    const Matrix3c& rho_ss);

/// Electron-transfer superoperators L^(+/-) = sum_w Phi^(+/-)_w K_w . K_w^dag,
/// with Phi the forward/backward energy integrals. Current superoperator is
/// forward - backward, activity is forward + backward.
struct JumpSuperoperators {
  Superoperator forward;
  Superoperator backward;

  Superoperator current() const { return forward - backward; }
  Superoperator activity() const { return forward + backward; }
};

JumpSuperoperators jump_superoperators(const DotParams& p, const QpcParams& q,
                                       const QpcChannels& ch);

/// Difference of detector currents between the right dot empty (electron on
/// the left, |10>) and occupied (|01>).
double signal_separation(const DotParams& p, const QpcParams& q, const QpcChannels& ch);

struct NoiseReport {
  double i_ss = 0.0;
  double a_ss = 0.0;
  double s_ii_0 = 0.0;
  double delta_i = 0.0;
  double snr = 0.0;
};

NoiseReport signal_to_noise(const DotParams& p, const QpcParams& q, const QpcChannels& ch,
                            const PopulationDynamics& pd, const CurrentCoefficients& c,
                            const Matrix3c& rho_ss);

/// Full noise evaluation for a solved QPC machine. Throws InvalidParameter for
/// an ideal detector.
NoiseReport compute_noise(const SolvedMachine& m);

}  // namespace fridge
