#include "fridge/liouvillian.hpp"

#include <cmath>
#include <sstream>

#include "fridge/fermi.hpp"

namespace fridge {

namespace {

Matrix9c kron(const Matrix3c& a, const Matrix3c& b) {
  Matrix9c out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    }
  }
  return out;
}

// Jump amplitudes of the lead-alpha annihilation operator onto |00><+| and
// |00><-|.
std::pair<double, double> lead_amplitudes(const DotParams& p, Side side) {
  const double c = std::cos(p.theta());
  const double s = std::sin(p.theta());
  if (side == Side::Left) return {c, -s};
  return {s, c};
}

Superoperator lead_pair(const Matrix3c& lowering, double gamma, double f) {
  return gamma * (1.0 - f) * dissipator(lowering) + gamma * f * dissipator(lowering.adjoint());
}

}  // namespace

Vector9c vectorize(const Matrix3c& m) {
  return Eigen::Map<const Vector9c>(m.data());
}

Matrix3c unvectorize(const Vector9c& v) {
  return Eigen::Map<const Matrix3c>(v.data());
}

double norm_inf(const Superoperator& s) {
  return s.matrix.cwiseAbs().rowwise().sum().maxCoeff();
}

void LeadParams::validate() const {
  if (!(temperature > 0.0)) throw InvalidParameter("lead temperature must be > 0");
  if (!(gamma > 0.0)) throw InvalidParameter("lead gamma must be > 0");
  if (!std::isfinite(mu)) throw InvalidParameter("lead mu must be finite");
}

Superoperator dissipator(const Matrix3c& x) {
  const Matrix3c id = Matrix3c::Identity();
  const Matrix3c xdx = x.adjoint() * x;
  Superoperator d;
  d.matrix = kron(x.conjugate(), x) - 0.5 * kron(id, xdx) - 0.5 * kron(xdx.transpose(), id);
  return d;
}

Superoperator sandwich(const Matrix3c& k) {
  Superoperator s;
  s.matrix = kron(k.conjugate(), k);
  return s;
}

Superoperator hamiltonian_generator(const Matrix3c& h) {
  const Matrix3c id = Matrix3c::Identity();
  Superoperator out;
  out.matrix = Complex(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));
  return out;
}

Superoperator lead_lindbladian_global(const DotParams& p, const LeadParams& lead, Side side) {
  lead.validate();
  const auto [amp_plus, amp_minus] = lead_amplitudes(p, side);
  const double f_plus = fermi_occupancy(p.energy_plus(), lead.mu, lead.temperature);
  const double f_minus = fermi_occupancy(p.energy_minus(), lead.mu, lead.temperature);
  return lead_pair(amp_plus * ket_bra(state::empty, state::plus), lead.gamma, f_plus) +
         lead_pair(amp_minus * ket_bra(state::empty, state::minus), lead.gamma, f_minus);
}

Superoperator lead_lindbladian_local(const DotParams& p, const LeadParams& lead, Side side) {
  lead.validate();
  const int site = side == Side::Left ? 1 : 2;
  const Matrix3c c_local = ket_bra(state::empty, site);
  const double f = fermi_occupancy(p.epsilon(), lead.mu, lead.temperature);
  return lead_pair(to_eigenbasis(p, c_local), lead.gamma, f);
}

Superoperator measurement_lindbladian_ideal(const DotParams& p, double gamma_m) {
  if (!(gamma_m >= 0.0)) throw InvalidParameter("measurement.gamma_m: must be >= 0");
  const ChargeComponents n = charge_components(p);
  return gamma_m * (dissipator(n.n_0) + dissipator(n.n_plus) + dissipator(n.n_minus));
}

Superoperator measurement_lindbladian_local(const DotParams& p, double gamma_m) {
  if (!(gamma_m >= 0.0)) throw InvalidParameter("measurement.gamma_m: must be >= 0");
  return gamma_m * dissipator(right_charge(p, BasisKind::Eigen));
}

Superoperator assemble_liouvillian(const Matrix3c& h, std::span<const Superoperator> parts) {
  Superoperator total = hamiltonian_generator(h);
  for (const auto& part : parts) total += part;
  return total;
}

DensityMatrix steady_state(const Superoperator& l, const SteadyStateOptions& opts) {
  const Matrix9c& m = l.matrix;
  Eigen::JacobiSVD<Matrix9c> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(7) < opts.degeneracy_tol * sv(0)) {
    std::ostringstream msg;
    msg << "steady state is not unique: singular values " << sv(7) << ", " << sv(8)
        << " vs largest " << sv(0);
    throw NonUniqueSteadyState(msg.str());
  }

  // Population rows (vec index 4i) are linearly dependent for a
  // trace-preserving generator; swap the weakest one for normalization.
  int replaced = 0;
  double weakest = m.row(0).norm();
  for (int i = 1; i < 3; ++i) {
    const double n = m.row(4 * i).norm();
    if (n < weakest) {
      weakest = n;
      replaced = 4 * i;
    }
  }
  Matrix9c a = m;
  a.row(replaced).setZero();
  for (int i = 0; i < 3; ++i) a(replaced, 4 * i) = 1.0;
  Vector9c rhs = Vector9c::Zero();
  rhs(replaced) = 1.0;

  auto finish = [](const Vector9c& v) {
    Matrix3c rho = unvectorize(v);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace();
    return rho;
  };
  auto residual = [&](const Matrix3c& rho) {
    return (m * vectorize(rho)).cwiseAbs().maxCoeff();
  };

  const double scale = norm_inf(l);
  Eigen::FullPivLU<Matrix9c> lu(a);
  if (lu.isInvertible()) {
    const Matrix3c rho = finish(lu.solve(rhs));
    if (residual(rho) <= 1e-12 * scale) return DensityMatrix(rho);
  }
  return DensityMatrix(finish(svd.matrixV().col(8)));
}

}  // namespace fridge
