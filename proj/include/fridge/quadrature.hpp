#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace fridge {

class NumericalFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class QuadratureFailure : public NumericalFailure {
public:
  using NumericalFailure::NumericalFailure;
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  /// Maximum number of subintervals before giving up.
  unsigned max_subdivisions = 2000;
};

struct QuadratureResult {
  double value;
  double error;
  double l1_norm;
};

/// Globally adaptive 61-point Gauss-Kronrod integration of f over [a, b]: the
/// subinterval with the largest error estimate is bisected until the summed
/// estimate is below max(rel_tol * L1, abs_tol). Throws QuadratureFailure when
/// the subdivision budget runs out first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

}  // namespace fridge
