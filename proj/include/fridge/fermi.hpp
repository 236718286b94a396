#pragma once

#include <cmath>

#include "fridge/model.hpp"

namespace fridge {

/// Fermi-Dirac occupation 1/(exp((E-mu)/T) + 1). Saturates to exactly 0 or 1
/// once the exponential over/underflows.
inline double fermi_occupancy(double energy, double mu, double temperature) {
  if (!(temperature > 0.0)) {
    throw InvalidParameter("fermi_occupancy: temperature must be > 0");
  }
  const double x = (energy - mu) / temperature;
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (std::exp(x) + 1.0);
}

/// 1 - f(E), evaluated without cancellation deep in the Fermi tail.
inline double fermi_hole(double energy, double mu, double temperature) {
  return fermi_occupancy(mu, energy, temperature);
}

}  // namespace fridge
