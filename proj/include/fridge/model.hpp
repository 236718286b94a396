#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

// Double-quantum-dot working body restricted to the single-electron sector.
//
// Natural units throughout: hbar = k_B = e = 1, energies in units of the
// inter-dot coupling g.
//
// Two orderings of the 3-dimensional Hilbert space are used:
//   local basis  (|00>, |10>, |01>)
//   eigenbasis   (|00>, |+>,  |->)
// All superoperators in this library act on density matrices written in the
// eigenbasis unless a function name says otherwise.

namespace fridge {

using Complex = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Matrix3 = Eigen::Matrix3d;

/// Thrown when a parameter violates its documented domain.
class InvalidParameter : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class BasisKind { Local, Eigen };

namespace state {
inline constexpr int empty = 0;  // |00>
inline constexpr int plus = 1;   // |+>  (eigenbasis) / |10> (local basis)
inline constexpr int minus = 2;  // |->  (eigenbasis) / |01> (local basis)
}  // namespace state

class DotParams {
public:
  DotParams(double epsilon, double delta, double g = 1.0);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  double g() const { return g_; }
  double omega() const { return omega_; }
  /// Mixing angle in [0, pi/2); tan(theta) = (omega - delta) / g.
  double theta() const { return theta_; }

  double energy_plus() const { return epsilon_ + 0.5 * omega_; }
  double energy_minus() const { return epsilon_ - 0.5 * omega_; }

private:
  double epsilon_;
  double delta_;
  double g_;
  double omega_;
  double theta_;
};

struct EigenDecomposition {
  double omega;
  double theta;
  /// Orthogonal U whose rows are |00>, |+>, |-> in local coordinates, so that
  /// X_eigen = U X_local U^T.
  Matrix3 change_of_basis;
};

/// Eigenoperator components of the right-dot charge n_R = |01><01| in the
/// eigenbasis: n_R = n_0 + n_plus + n_minus with [H, n_plus] = +omega n_plus.
struct ChargeComponents {
  Matrix3c n_0;
  Matrix3c n_plus;   // cos(theta) sin(theta) |+><-|
  Matrix3c n_minus;  // cos(theta) sin(theta) |-><+|
};

EigenDecomposition eigen_decomposition(const DotParams& p);

Matrix3c hamiltonian_matrix(const DotParams& p, BasisKind basis);

ChargeComponents charge_components(const DotParams& p);

Matrix3c to_eigenbasis(const DotParams& p, const Matrix3c& local);
Matrix3c to_local_basis(const DotParams& p, const Matrix3c& eigen);

/// Right-dot occupation |01><01| in the requested basis.
Matrix3c right_charge(const DotParams& p, BasisKind basis);

/// Total electron number diag(0, 1, 1); identical in both bases.
Matrix3c number_operator();

/// |i><j| in whichever basis the caller is working in.
Matrix3c ket_bra(int i, int j);

}  // namespace fridge
