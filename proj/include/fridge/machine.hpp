#pragma once

#include <optional>
#include <variant>

#include "fridge/liouvillian.hpp"
#include "fridge/qpc.hpp"
#include "fridge/thermo.hpp"

// A complete operating point: dots, two leads, and a measuring apparatus,
// assembled into one Liouvillian and solved for its steady state.

namespace fridge {

enum class Regime { Global, Local };

struct LeadPair {
  double mu = 10.0;
  double t_l = 2.0;
  double t_r = 4.0;
  double gamma = 0.01;

  LeadParams left() const { return {mu, t_l, gamma}; }
  LeadParams right() const { return {mu, t_r, gamma}; }
  void validate() const;
};

/// Phenomenological continuous measurement of n_R at rate gamma_m.
struct IdealMeasurement {
  double gamma_m = 0.0;
};

/// Quantum point contact detector.
struct QpcMeasurement {
  QpcParams qpc;
};

using Measurement = std::variant<IdealMeasurement, QpcMeasurement>;

struct MachineSpec {
  DotParams dot{5.4, 4.3, 1.0};
  LeadPair leads;
  Measurement measurement = IdealMeasurement{};
  Regime regime = Regime::Global;
  QuadratureOptions quadrature;

  bool uses_qpc() const { return std::holds_alternative<QpcMeasurement>(measurement); }
};

struct SolvedMachine {
  MachineSpec spec;
  Matrix3c hamiltonian;  // eigenbasis
  Superoperator left;
  Superoperator right;
  Superoperator measurement;
  Superoperator total;
  DensityMatrix rho;
  std::optional<QpcChannels> channels;  // QPC only
  RateTable rates;                       // measurement rates per channel
};

/// Builds and solves the steady state. Throws InvalidParameter for a
/// QPC detector in the local regime, NumericalFailure on solver problems.
SolvedMachine solve(const MachineSpec& spec);

/// All steady-state flows and derived efficiencies.
FlowReport compute_flows(const SolvedMachine& m);

}  // namespace fridge
