#include "fridge/model.hpp"

#include <cmath>
#include <numbers>

namespace fridge {

DotParams::DotParams(double epsilon, double delta, double g)
    : epsilon_(epsilon), delta_(delta), g_(g) {
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw InvalidParameter("dot.g: must be > 0");
  }
  if (!std::isfinite(epsilon) || !std::isfinite(delta)) {
    throw InvalidParameter("dot: epsilon and delta must be finite");
  }
  omega_ = std::hypot(delta, g);
  // tan(theta) = (omega - delta)/g = g/(omega + delta); the second form avoids
  // cancellation for delta >> g.
  if (delta == 0.0) {
    theta_ = std::numbers::pi / 4.0;
  } else if (delta > 0.0) {
    theta_ = std::atan(g / (omega_ + delta));
  } else {
    theta_ = std::atan((omega_ - delta) / g);
  }
}

EigenDecomposition eigen_decomposition(const DotParams& p) {
  const double c = std::cos(p.theta());
  const double s = std::sin(p.theta());
  Matrix3 u;
  u << 1.0, 0.0, 0.0,
       0.0, c, s,
       0.0, -s, c;
  return {p.omega(), p.theta(), u};
}

Matrix3c hamiltonian_matrix(const DotParams& p, BasisKind basis) {
  Matrix3c h = Matrix3c::Zero();
  if (basis == BasisKind::Eigen) {
    h(state::plus, state::plus) = p.energy_plus();
    h(state::minus, state::minus) = p.energy_minus();
    return h;
  }
  h(1, 1) = p.epsilon() + 0.5 * p.delta();
  h(2, 2) = p.epsilon() - 0.5 * p.delta();
  h(1, 2) = 0.5 * p.g();
  h(2, 1) = 0.5 * p.g();
  return h;
}

ChargeComponents charge_components(const DotParams& p) {
  const double c = std::cos(p.theta());
  const double s = std::sin(p.theta());
  ChargeComponents out;
  out.n_0 = Matrix3c::Zero();
  out.n_0(state::plus, state::plus) = s * s;
  out.n_0(state::minus, state::minus) = c * c;
  out.n_plus = c * s * ket_bra(state::plus, state::minus);
  out.n_minus = c * s * ket_bra(state::minus, state::plus);
  return out;
}

Matrix3c to_eigenbasis(const DotParams& p, const Matrix3c& local) {
  const Matrix3c u = eigen_decomposition(p).change_of_basis.cast<Complex>();
  return u * local * u.transpose();
}

Matrix3c to_local_basis(const DotParams& p, const Matrix3c& eigen) {
  const Matrix3c u = eigen_decomposition(p).change_of_basis.cast<Complex>();
  return u.transpose() * eigen * u;
}

Matrix3c right_charge(const DotParams& p, BasisKind basis) {
  const Matrix3c local = ket_bra(2, 2);
  return basis == BasisKind::Local ? local : to_eigenbasis(p, local);
}

Matrix3c number_operator() {
  Matrix3c n = Matrix3c::Zero();
  n(1, 1) = 1.0;
  n(2, 2) = 1.0;
  return n;
}

Matrix3c ket_bra(int i, int j) {
  Matrix3c m = Matrix3c::Zero();
  m(i, j) = 1.0;
  return m;
}

}  // namespace fridge
