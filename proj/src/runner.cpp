#include "fridge/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace fridge {

namespace {

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ' ';
  }
  return s;
}

std::string compact(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::pair<std::string, std::string>> base_metadata(const RunConfig& cfg,
                                                               const std::string& command) {
  const MachineSpec& m = cfg.machine;
  std::vector<std::pair<std::string, std::string>> md;
  md.emplace_back("command", command);
  md.emplace_back("config", cfg.name);
  md.emplace_back("units", "hbar=k_B=e=1; energies and temperatures in units of g");
  md.emplace_back("regime", m.regime == Regime::Global ? "global" : "local");
  md.emplace_back("g", compact(m.dot.g()));
  md.emplace_back("gamma", compact(m.leads.gamma));
  md.emplace_back("epsilon", compact(m.dot.epsilon()));
  md.emplace_back("delta", compact(m.dot.delta()));
  md.emplace_back("omega", compact(m.dot.omega()));
  md.emplace_back("mu", compact(m.leads.mu));
  md.emplace_back("t_l", compact(m.leads.t_l));
  md.emplace_back("t_r", compact(m.leads.t_r));
  if (const auto* ideal = std::get_if<IdealMeasurement>(&m.measurement)) {
    md.emplace_back("detector", "ideal");
    md.emplace_back("gamma_m", compact(ideal->gamma_m));
  } else {
    const MachineSpec resolved = resolve_point(cfg);
    const QpcParams& q = std::get<QpcMeasurement>(resolved.measurement).qpc;
    md.emplace_back("detector", "qpc");
    md.emplace_back("t0", compact(q.t0));
    md.emplace_back("t1", compact(q.t1));
    md.emplace_back("t_m", compact(q.t_m));
    if (cfg.mu_m_over_omega) {
      md.emplace_back("mu_m_over_omega", compact(*cfg.mu_m_over_omega));
    } else {
      md.emplace_back("mu_m", compact(q.mu_m));
    }
    if (cfg.calibration) {
      const CalibrationSpec& c = *cfg.calibration;
      md.emplace_back("calibration",
                      "t1 set per point so that gamma_qpc(0) = " + compact(c.gamma_m) +
                          " at t_m = " + compact(c.t_m) + ", mu_m = " +
                          compact(c.mu_m_over_omega) + " * omega, t0 fixed");
    }
    md.emplace_back("noise_convention_kappa", compact(kNoiseConventionFactor));
  }
  md.emplace_back("quad_rel_tol", compact(m.quadrature.rel_tol));
  md.emplace_back("quad_abs_tol", compact(m.quadrature.abs_tol));
  return md;
}

}  // namespace

PointResult run_point(const RunConfig& cfg, bool with_noise) {
  const MachineSpec spec = resolve_point(cfg);
  const SolvedMachine solved = solve(spec);
  PointResult out;
  out.flows = compute_flows(solved);
  if (with_noise && spec.uses_qpc()) out.noise = compute_noise(solved);
  return out;
}

double SweepResult::success_fraction() const {
  if (rows.empty()) return 1.0;
  return static_cast<double>(rows.size() - failed) / static_cast<double>(rows.size());
}

std::vector<std::string> axis_names(const RunConfig& cfg) {
  std::vector<std::string> names;
  if (!cfg.sweep) return names;
  names.push_back(cfg.sweep->axis1.name);
  if (cfg.sweep->axis2) names.push_back(cfg.sweep->axis2->name);
  return names;
}

std::vector<std::vector<double>> grid_points(const RunConfig& cfg) {
  if (!cfg.sweep) return {{}};
  const std::vector<double> inner = cfg.sweep->axis1.values();
  std::vector<std::vector<double>> out;
  if (!cfg.sweep->axis2) {
    for (double x : inner) out.push_back({x});
    return out;
  }
  for (double y : cfg.sweep->axis2->values()) {
    for (double x : inner) out.push_back({x, y});
  }
  return out;
}

RunConfig point_config(const RunConfig& cfg, const std::vector<double>& axis_values) {
  RunConfig pc = cfg;
  const std::vector<std::string> names = axis_names(cfg);
  for (std::size_t i = 0; i < names.size() && i < axis_values.size(); ++i) {
    set_field(pc, names[i], axis_values[i]);
  }
  pc.sweep.reset();
  return pc;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

unsigned resolve_thread_count(std::optional<unsigned> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("FRIDGE_QPC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult run_sweep(const RunConfig& cfg, unsigned threads, bool with_noise) {
  const auto points = grid_points(cfg);
  SweepResult result;
  result.axis_names = axis_names(cfg);
  result.rows.resize(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    PointResult row;
    try {
      row = run_point(point_config(cfg, points[i]), with_noise);
    } catch (const std::exception& e) {
      row = PointResult{};
      row.status = "failed:" + sanitize(e.what());
    }
    row.axis_values = points[i];
    result.rows[i] = std::move(row);
  });
  result.failed = static_cast<std::size_t>(std::count_if(
      result.rows.begin(), result.rows.end(), [](const PointResult& r) { return r.status != "ok"; }));
  return result;
}

std::vector<LocalCheckRow> run_local_check(const RunConfig& cfg, unsigned threads) {
  if (cfg.machine.uses_qpc()) throw ConfigError("measurement.model: local-check needs \"ideal\"");
  const auto points = grid_points(cfg);
  std::vector<LocalCheckRow> rows(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    LocalCheckRow row;
    row.axis_values = points[i];
    try {
      MachineSpec spec = resolve_point(point_config(cfg, points[i]));
      spec.regime = Regime::Local;
      row.spec = spec;
      row.gamma_m = std::get<IdealMeasurement>(spec.measurement).gamma_m;
      const LocalFlowReport analytic = local_flows_analytic(spec.dot, spec.leads, row.gamma_m);
      const FlowReport numeric = compute_flows(solve(spec));
      row.j_l_analytic = analytic.j_l;
      row.j_l_numeric = numeric.j_l;
      row.error_scale = analytic.error_scale;
      if (std::isfinite(analytic.gamma_m_threshold)) {
        row.gamma_m_threshold = analytic.gamma_m_threshold;
      }
    } catch (const std::exception& e) {
      row.status = "failed:" + sanitize(e.what());
    }
    rows[i] = std::move(row);
  });
  return rows;
}

const std::vector<std::string>& flow_columns() {
  static const std::vector<std::string> cols = {
      "j_l",     "j_r",        "e_dot_m",    "p_m",   "j_m",
      "xi",      "eta_app",    "eta_hybrid", "eta_carnot", "sigma",
      "first_law_residual"};
  return cols;
}

const std::vector<std::string>& noise_columns() {
  static const std::vector<std::string> cols = {"i_qpc", "a_qpc", "s_ii0", "delta_i", "snr"};
  return cols;
}

Table flows_table(const RunConfig& cfg, const SweepResult& result, const std::string& command) {
  Table t;
  t.metadata = base_metadata(cfg, command);
  const bool with_noise = cfg.machine.uses_qpc();
  t.columns.push_back("status");
  for (const auto& a : result.axis_names) t.columns.push_back(a);
  for (const auto& c : flow_columns()) t.columns.push_back(c);
  if (with_noise) {
    for (const auto& c : noise_columns()) t.columns.push_back(c);
  }

  for (const PointResult& r : result.rows) {
    std::vector<Cell> row;
    row.emplace_back(r.status);
    for (double v : r.axis_values) row.emplace_back(std::optional<double>(v));
    auto put = [&](std::optional<double> v) { row.emplace_back(v); };
    if (r.flows) {
      const FlowReport& f = *r.flows;
      put(f.j_l);
      put(f.j_r);
      put(f.e_dot_m);
      put(f.p_m);
      put(f.j_m);
      put(f.xi);
      put(f.eta_app);
      put(f.eta_hybrid);
      put(f.eta_carnot);
      put(f.sigma);
      put(f.first_law_residual);
    } else {
      for (std::size_t i = 0; i < flow_columns().size(); ++i) put(std::nullopt);
    }
    if (with_noise) {
      if (r.noise) {
        put(r.noise->i_ss);
        put(r.noise->a_ss);
        put(r.noise->s_ii_0);
        put(r.noise->delta_i);
        put(r.noise->snr);
      } else {
        for (std::size_t i = 0; i < noise_columns().size(); ++i) put(std::nullopt);
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table local_check_table(const RunConfig& cfg, const std::vector<LocalCheckRow>& rows) {
  Table t;
  t.metadata = base_metadata(cfg, "local-check");
  t.metadata.emplace_back("local_model", "lead Fermi factors at epsilon; measurement gamma_m D[n_R]");
  t.columns.push_back("status");
  for (const auto& a : axis_names(cfg)) t.columns.push_back(a);
  for (const char* c : {"epsilon", "delta", "g", "mu", "t_l", "t_r", "gamma", "gamma_m",
                        "j_l_analytic", "j_l_numeric", "error_scale", "gamma_m_threshold"}) {
    t.columns.emplace_back(c);
  }
  for (const LocalCheckRow& r : rows) {
    std::vector<Cell> row;
    row.emplace_back(r.status);
    for (double v : r.axis_values) row.emplace_back(std::optional<double>(v));
    if (r.status == "ok") {
      const MachineSpec& s = r.spec;
      for (double v : {s.dot.epsilon(), s.dot.delta(), s.dot.g(), s.leads.mu, s.leads.t_l,
                       s.leads.t_r, s.leads.gamma, r.gamma_m, r.j_l_analytic, r.j_l_numeric,
                       r.error_scale}) {
        row.emplace_back(std::optional<double>(v));
      }
      row.emplace_back(r.gamma_m_threshold);
    } else {
      for (int i = 0; i < 12; ++i) row.emplace_back(std::optional<double>());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

void write_csv(std::ostream& out, const Table& t) {
  for (const auto& [key, value] : t.metadata) out << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out << ',';
    out << t.columns[i];
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* s = std::get_if<std::string>(&row[i])) {
        out << *s;
      } else if (const auto& v = std::get<std::optional<double>>(row[i]); v) {
        out << format_number(*v);
      }
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& t) {
  using nlohmann::ordered_json;
  ordered_json doc;
  ordered_json md = ordered_json::object();
  for (const auto& [key, value] : t.metadata) md[key] = value;
  doc["metadata"] = md;
  doc["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
      if (const auto* s = std::get_if<std::string>(&row[i])) {
        obj[t.columns[i]] = *s;
      } else if (const auto& v = std::get<std::optional<double>>(row[i]); v && std::isfinite(*v)) {
        obj[t.columns[i]] = *v;
      } else {
        obj[t.columns[i]] = nullptr;
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

}  // namespace fridge
