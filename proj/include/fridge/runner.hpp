#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fridge/config.hpp"
#include "fridge/local.hpp"
#include "fridge/noise.hpp"

namespace fridge {

struct PointResult {
  std::string status = "ok";
  std::vector<double> axis_values;
  std::optional<FlowReport> flows;
  std::optional<NoiseReport> noise;
};

/// Solves one configuration (sweep ignored). Noise is evaluated for QPC
/// detectors when with_noise is set. Throws on failure.
PointResult run_point(const RunConfig& cfg, bool with_noise = true);

struct SweepResult {
  std::vector<std::string> axis_names;
  std::vector<PointResult> rows;
  std::size_t failed = 0;

  double success_fraction() const;
};

/// Grid points in output order (axis2 outer, axis1 inner). A configuration
/// without sweep yields a single point.
std::vector<std::vector<double>> grid_points(const RunConfig& cfg);
std::vector<std::string> axis_names(const RunConfig& cfg);

/// Configuration for one grid point.
RunConfig point_config(const RunConfig& cfg, const std::vector<double>& axis_values);

/// Evaluates every grid point on `threads` workers. Per-point failures become
/// rows with status "failed:<reason>". Output order does not depend on the
/// thread count.
SweepResult run_sweep(const RunConfig& cfg, unsigned threads, bool with_noise = true);

struct LocalCheckRow {
  std::string status = "ok";
  std::vector<double> axis_values;
  MachineSpec spec;
  double gamma_m = 0.0;
  double j_l_analytic = 0.0;
  double j_l_numeric = 0.0;
  double error_scale = 0.0;
  std::optional<double> gamma_m_threshold;
};

/// Closed-form against numeric local-regime cooling power at every grid point.
/// Requires the ideal detector.
std::vector<LocalCheckRow> run_local_check(const RunConfig& cfg, unsigned threads);

/// Runs fn(i) for i in [0, n) on up to `threads` threads.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Flag value if given, else FRIDGE_QPC_THREADS, else hardware concurrency.
unsigned resolve_thread_count(std::optional<unsigned> flag);

// Tabular output shared by the CSV and JSON writers.

using Cell = std::variant<std::string, std::optional<double>>;

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Column order of the flow portion of sweep output, after status and axes.
const std::vector<std::string>& flow_columns();
const std::vector<std::string>& noise_columns();

Table flows_table(const RunConfig& cfg, const SweepResult& result, const std::string& command);
Table local_check_table(const RunConfig& cfg, const std::vector<LocalCheckRow>& rows);

/// 17 significant digits, scientific notation.
std::string format_number(double x);

/// Metadata lines prefixed with '#', then a header row, then data rows.
/// Absent values are empty fields.
void write_csv(std::ostream& out, const Table& t);
/// {"metadata": {...}, "columns": [...], "rows": [{column: value}, ...]}
/// with null for absent values.
void write_json(std::ostream& out, const Table& t);

}  // namespace fridge
