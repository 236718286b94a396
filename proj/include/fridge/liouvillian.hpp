#pragma once

#include <span>

#include "fridge/model.hpp"
#include "fridge/quadrature.hpp"

namespace fridge {

using Matrix9c = Eigen::Matrix<Complex, 9, 9>;
using Vector9c = Eigen::Matrix<Complex, 9, 1>;

/// Column-major vectorization of 3x3 operators.
Vector9c vectorize(const Matrix3c& m);
Matrix3c unvectorize(const Vector9c& v);

/// Linear map on 3x3 density matrices, stored as a 9x9 matrix acting on the
/// column-major vectorization.
struct Superoperator {
  Matrix9c matrix = Matrix9c::Zero();

  Matrix3c apply(const Matrix3c& rho) const { return unvectorize(matrix * vectorize(rho)); }

  Superoperator& operator+=(const Superoperator& other) {
    matrix += other.matrix;
    return *this;
  }
  friend Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
  friend Superoperator operator-(Superoperator a, const Superoperator& b) {
    a.matrix -= b.matrix;
    return a;
  }
  friend Superoperator operator*(double k, Superoperator a) {
    a.matrix *= k;
    return a;
  }
};

/// Induced infinity norm (max absolute row sum).
double norm_inf(const Superoperator& s);

class DensityMatrix {
public:
  explicit DensityMatrix(Matrix3c rho) : rho_(std::move(rho)) {}

  const Matrix3c& matrix() const { return rho_; }
  double population(int i) const { return rho_(i, i).real(); }
  double expectation(const Matrix3c& op) const { return (op * rho_).trace().real(); }

private:
  Matrix3c rho_;
};

struct LeadParams {
  double mu = 0.0;
  double temperature = 1.0;
  double gamma = 0.01;

  /// Throws InvalidParameter on temperature <= 0 or gamma <= 0.
  void validate() const;
};

enum class Side { Left, Right };

/// rho -> X rho X^dag - {X^dag X, rho}/2.
Superoperator dissipator(const Matrix3c& x);

/// rho -> K rho K^dag.
Superoperator sandwich(const Matrix3c& k);

/// rho -> -i[H, rho].
Superoperator hamiltonian_generator(const Matrix3c& h);

/// Global-regime lead dissipator: jump operators between |00> and |+/->.
Superoperator lead_lindbladian_global(const DotParams& p, const LeadParams& lead, Side side);

/// Local-regime lead dissipator with Fermi factors evaluated at epsilon.
/// Returned in the eigenbasis.
Superoperator lead_lindbladian_local(const DotParams& p, const LeadParams& lead, Side side);

/// gamma_m * sum_w D[n_w] with the eigenoperator components of n_R.
Superoperator measurement_lindbladian_ideal(const DotParams& p, double gamma_m);

/// gamma_m * D[n_R] (undecomposed charge; local regime). Eigenbasis.
Superoperator measurement_lindbladian_local(const DotParams& p, double gamma_m);

Superoperator assemble_liouvillian(const Matrix3c& h, std::span<const Superoperator> parts);

class NonUniqueSteadyState : public NumericalFailure {
public:
  using NumericalFailure::NumericalFailure;
};

struct SteadyStateOptions {
  /// Relative singular-value gap below which the kernel counts as degenerate.
  double degeneracy_tol = 1e-10;
};

DensityMatrix steady_state(const Superoperator& l, const SteadyStateOptions& opts = {});

}  // namespace fridge
