// Command-line driver: single points, sweeps, figure presets, noise and
// local-regime checks.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fridge/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<unsigned> threads;
};

fridge::RunConfig load(const std::string& command, const Options& opt) {
  fridge::RunConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = fridge::load_config(opt.config_path);
  } else if (auto preset = fridge::preset_by_name(command)) {
    cfg = *preset;
  } else {
    throw fridge::ConfigError("--config: required for " + command);
  }
  if (!opt.out_path.empty()) cfg.output_path = opt.out_path;
  if (opt.format == "csv") cfg.format = fridge::OutputFormat::Csv;
  if (opt.format == "json") cfg.format = fridge::OutputFormat::Json;
  return cfg;
}

void emit(const fridge::RunConfig& cfg, const fridge::Table& table) {
  std::unique_ptr<std::ofstream> file;
  std::ostream* out = &std::cout;
  if (cfg.output_path) {
    file = std::make_unique<std::ofstream>(*cfg.output_path);
    if (!*file) throw fridge::ConfigError("output.path: cannot write " + *cfg.output_path);
    out = file.get();
  }
  if (cfg.format == fridge::OutputFormat::Json) {
    fridge::write_json(*out, table);
  } else {
    fridge::write_csv(*out, table);
  }
}

int run(const std::string& command, const Options& opt) {
  fridge::RunConfig cfg = load(command, opt);
  const unsigned threads = fridge::resolve_thread_count(opt.threads);

  if (command == "local-check") {
    const auto rows = fridge::run_local_check(cfg, threads);
    emit(cfg, fridge::local_check_table(cfg, rows));
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.status != "ok";
    return failed * 100 <= rows.size() ? kExitOk : kExitNumerical;
  }

  if (command == "noise" && !cfg.machine.uses_qpc()) {
    throw fridge::ConfigError("measurement.model: the noise command needs \"qpc\"");
  }

  if (command == "point") {
    cfg.sweep.reset();
    fridge::PointResult r = fridge::run_point(cfg);
    fridge::SweepResult result;
    result.rows.push_back(std::move(r));
    emit(cfg, fridge::flows_table(cfg, result, command));
    return kExitOk;
  }

  if (command == "sweep" && !cfg.sweep) {
    throw fridge::ConfigError("sweep: missing section (use the point command for one point)");
  }
  const fridge::SweepResult result = fridge::run_sweep(cfg, threads);
  emit(cfg, fridge::flows_table(cfg, result, command));
  for (const auto& r : result.rows) {
    if (r.status != "ok") std::cerr << "point failed: " << r.status.substr(7) << '\n';
  }
  return result.success_fraction() >= 0.99 ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state simulator for a measurement-driven double-dot refrigerator"};
  app.require_subcommand(1);
  Options opt;
  unsigned threads = 0;

  for (const char* name : {"point", "sweep", "fig2", "fig3", "noise", "local-check"}) {
    CLI::App* sub = app.add_subcommand(name);
    const bool preset = std::string(name) == "fig2" || std::string(name) == "fig3";
    auto* cfg = sub->add_option("--config", opt.config_path, "JSON run configuration");
    if (!preset) cfg->required();
    sub->add_option("--out", opt.out_path, "output file (default: stdout)");
    sub->add_option("--threads", threads, "worker threads (overrides FRIDGE_QPC_THREADS)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (threads > 0) opt.threads = threads;

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const fridge::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fridge::InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fridge::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
