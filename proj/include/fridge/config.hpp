#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fridge/machine.hpp"

// Run configuration. The on-disk format is JSON; see README.md for the
// grammar. Every validation failure names the offending field path.

namespace fridge {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class AxisScale { Linear, Log };
enum class OutputFormat { Csv, Json };

struct AxisSpec {
  std::string name;  // dotted field path, e.g. "measurement.gamma_m"
  double from = 0.0;
  double to = 1.0;
  int points = 2;
  AxisScale scale = AxisScale::Linear;

  std::vector<double> values() const;
};

struct SweepSpec {
  AxisSpec axis1;
  std::optional<AxisSpec> axis2;
};

/// Fixes t1 so that gamma_QPC(0) = gamma_m at a reference detector point.
struct CalibrationSpec {
  double gamma_m = 1.0;
  double t_m = 12.0;
  double mu_m_over_omega = 1.0;
};

struct RunConfig {
  std::string name = "custom";
  MachineSpec machine;
  /// When set, mu_m follows the dot splitting: mu_m = ratio * Omega.
  std::optional<double> mu_m_over_omega;
  std::optional<CalibrationSpec> calibration;
  std::optional<SweepSpec> sweep;
  std::optional<std::string> output_path;
  OutputFormat format = OutputFormat::Csv;
};

/// Axis names accepted in sweeps.
const std::vector<std::string>& sweepable_fields();

RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

/// Reference operating point (epsilon 5.4, delta 4.3, mu 10, T_L 2, T_R 4,
/// gamma 0.01) with a 200-point log sweep of gamma_m over [1e-3, 10].
RunConfig preset_fig2();
/// QPC detector grid over t_m in [1, 40] and mu_m / Omega in [0.01, 20], both
/// log spaced, with the transparency calibration applied.
RunConfig preset_fig3(int points_per_axis = 50);
/// Returns preset_fig2/preset_fig3 by name, or nullopt.
std::optional<RunConfig> preset_by_name(std::string_view name);

/// Sets one sweepable field on a configuration copy. Throws ConfigError for
/// unknown names.
void set_field(RunConfig& cfg, const std::string& field, double value);

/// Final machine for a configuration: applies mu_m_over_omega and the
/// calibration on top of cfg.machine.
MachineSpec resolve_point(const RunConfig& cfg);

/// t1 produced by the calibration for the given t0 (exposed for metadata).
double calibrated_t1(const CalibrationSpec& cal, const DotParams& dot, double t0,
                     const QuadratureOptions& opts);

}  // namespace fridge
