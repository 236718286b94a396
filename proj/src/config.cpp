#include "fridge/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fridge {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
  throw ConfigError(path + ": " + reason);
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& keys) {
  for (const auto& [key, _] : obj.items()) {
    if (!keys.count(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

const json& section(const json& root, const std::string& key) {
  if (!root.contains(key)) fail(key, "missing section");
  const json& s = root.at(key);
  if (!s.is_object()) fail(key, "must be an object");
  return s;
}

double number(const json& obj, const std::string& path, const std::string& key) {
  const std::string full = path + "." + key;
  if (!obj.contains(key)) fail(full, "missing");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(full, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(full, "must be finite");
  return x;
}

std::optional<double> maybe_number(const json& obj, const std::string& path,
                                   const std::string& key) {
  if (!obj.contains(key)) return std::nullopt;
  return number(obj, path, key);
}

std::string text(const json& obj, const std::string& path, const std::string& key) {
  const std::string full = path + "." + key;
  if (!obj.contains(key)) fail(full, "missing");
  if (!obj.at(key).is_string()) fail(full, "must be a string");
  return obj.at(key).get<std::string>();
}

void require_positive(double x, const std::string& path) {
  if (!(x > 0.0)) fail(path, "must be > 0");
}

void require_non_negative(double x, const std::string& path) {
  if (!(x >= 0.0)) fail(path, "must be >= 0");
}

AxisSpec parse_axis(const json& obj, const std::string& path) {
  if (!obj.is_object()) fail(path, "must be an object");
  reject_unknown(obj, path, {"name", "from", "to", "points", "scale"});
  AxisSpec a;
  a.name = text(obj, path, "name");
  const auto& names = sweepable_fields();
  if (std::find(names.begin(), names.end(), a.name) == names.end()) {
    fail(path + ".name", "not a sweepable field: " + a.name);
  }
  a.from = number(obj, path, "from");
  a.to = number(obj, path, "to");
  if (!obj.contains("points") || !obj.at("points").is_number_integer()) {
    fail(path + ".points", "must be an integer");
  }
  a.points = obj.at("points").get<int>();
  if (a.points < 2) fail(path + ".points", "must be >= 2");
  if (!(a.from < a.to)) fail(path, "from must be < to");
  const std::string scale = obj.contains("scale") ? text(obj, path, "scale") : "linear";
  if (scale == "linear") {
    a.scale = AxisScale::Linear;
  } else if (scale == "log") {
    a.scale = AxisScale::Log;
    if (!(a.from > 0.0)) fail(path + ".from", "log scale requires from > 0");
  } else {
    fail(path + ".scale", "must be \"linear\" or \"log\"");
  }
  return a;
}

void parse_dot(const json& root, RunConfig& cfg) {
  const json& d = section(root, "dot");
  reject_unknown(d, "dot", {"epsilon", "delta", "g"});
  const double eps = number(d, "dot", "epsilon");
  const double delta = number(d, "dot", "delta");
  const double g = maybe_number(d, "dot", "g").value_or(1.0);
  require_positive(g, "dot.g");
  cfg.machine.dot = DotParams(eps, delta, g);
}

void parse_leads(const json& root, RunConfig& cfg) {
  const json& l = section(root, "leads");
  reject_unknown(l, "leads", {"mu", "mu_l", "mu_r", "t_l", "t_r", "t_r_ratio", "gamma"});
  LeadPair leads;
  const auto mu = maybe_number(l, "leads", "mu");
  const auto mu_l = maybe_number(l, "leads", "mu_l");
  const auto mu_r = maybe_number(l, "leads", "mu_r");
  if (mu_l && mu_r && *mu_l != *mu_r) {
    fail("leads", "unequal lead chemical potentials (mu_l != mu_r) are not supported");
  }
  const auto any_mu = mu ? mu : (mu_l ? mu_l : mu_r);
  if (!any_mu) fail("leads.mu", "missing");
  if ((mu_l && *mu_l != *any_mu) || (mu_r && *mu_r != *any_mu)) {
    fail("leads", "unequal lead chemical potentials (mu_l != mu_r) are not supported");
  }
  leads.mu = *any_mu;
  leads.t_l = number(l, "leads", "t_l");
  require_positive(leads.t_l, "leads.t_l");
  const auto t_r = maybe_number(l, "leads", "t_r");
  const auto ratio = maybe_number(l, "leads", "t_r_ratio");
  if (t_r && ratio) fail("leads", "give either t_r or t_r_ratio, not both");
  if (!t_r && !ratio) fail("leads.t_r", "missing");
  if (ratio) require_positive(*ratio, "leads.t_r_ratio");
  leads.t_r = t_r ? *t_r : *ratio * leads.t_l;
  require_positive(leads.t_r, "leads.t_r");
  leads.gamma = number(l, "leads", "gamma");
  require_positive(leads.gamma, "leads.gamma");
  cfg.machine.leads = leads;
}

void parse_measurement(const json& root, RunConfig& cfg) {
  const json& m = section(root, "measurement");
  const std::string model = text(m, "measurement", "model");
  if (model == "ideal") {
    reject_unknown(m, "measurement", {"model", "gamma_m"});
    const double gm = number(m, "measurement", "gamma_m");
    require_non_negative(gm, "measurement.gamma_m");
    cfg.machine.measurement = IdealMeasurement{gm};
    return;
  }
  if (model != "qpc") fail("measurement.model", "must be \"ideal\" or \"qpc\"");
  reject_unknown(m, "measurement",
                 {"model", "t0", "t1", "mu_m", "mu_m_over_omega", "t_m", "calibration"});
  QpcParams q;
  q.t0 = number(m, "measurement", "t0");
  if (!(q.t0 > 0.0 && q.t0 <= 1.0)) fail("measurement.t0", "must be in (0, 1]");
  q.t_m = number(m, "measurement", "t_m");
  require_positive(q.t_m, "measurement.t_m");

  const auto mu_m = maybe_number(m, "measurement", "mu_m");
  const auto ratio = maybe_number(m, "measurement", "mu_m_over_omega");
  if (mu_m && ratio) fail("measurement", "give either mu_m or mu_m_over_omega, not both");
  if (!mu_m && !ratio) fail("measurement.mu_m", "missing");
  if (mu_m) {
    require_non_negative(*mu_m, "measurement.mu_m");
    q.mu_m = *mu_m;
  } else {
    require_non_negative(*ratio, "measurement.mu_m_over_omega");
    cfg.mu_m_over_omega = *ratio;
  }

  const auto t1 = maybe_number(m, "measurement", "t1");
  if (m.contains("calibration")) {
    if (t1) fail("measurement", "give either t1 or calibration, not both");
    const json& c = m.at("calibration");
    if (!c.is_object()) fail("measurement.calibration", "must be an object");
    const std::string path = "measurement.calibration";
    reject_unknown(c, path, {"gamma_m", "t_m", "mu_m_over_omega"});
    CalibrationSpec cal;
    cal.gamma_m = number(c, path, "gamma_m");
    require_positive(cal.gamma_m, path + ".gamma_m");
    cal.t_m = number(c, path, "t_m");
    require_positive(cal.t_m, path + ".t_m");
    cal.mu_m_over_omega = number(c, path, "mu_m_over_omega");
    require_non_negative(cal.mu_m_over_omega, path + ".mu_m_over_omega");
    cfg.calibration = cal;
    q.t1 = 0.0;
  } else {
    if (!t1) fail("measurement.t1", "missing (or give a calibration block)");
    if (!(*t1 >= 0.0 && *t1 <= q.t0)) fail("measurement.t1", "must be in [0, t0]");
    q.t1 = *t1;
  }
  cfg.machine.measurement = QpcMeasurement{q};
}

void apply_document(const json& root, RunConfig& cfg) {
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(root, "", {"name", "preset", "dot", "leads", "measurement", "regime", "sweep",
                            "output", "tolerances"});
  const bool from_preset = root.contains("preset");
  if (root.contains("name")) cfg.name = text(root, "config", "name");

  if (!from_preset || root.contains("dot")) parse_dot(root, cfg);
  if (!from_preset || root.contains("leads")) parse_leads(root, cfg);
  if (!from_preset || root.contains("measurement")) {
    cfg.mu_m_over_omega.reset();
    cfg.calibration.reset();
    parse_measurement(root, cfg);
  }

  if (root.contains("regime")) {
    const std::string r = text(root, "config", "regime");
    if (r == "global") {
      cfg.machine.regime = Regime::Global;
    } else if (r == "local") {
      cfg.machine.regime = Regime::Local;
    } else {
      fail("regime", "must be \"global\" or \"local\"");
    }
  }
  if (cfg.machine.regime == Regime::Local && cfg.machine.uses_qpc()) {
    fail("regime", "the local regime supports only the ideal detector");
  }

  if (root.contains("sweep")) {
    const json& s = root.at("sweep");
    if (s.is_null()) {
      cfg.sweep.reset();
    } else {
      if (!s.is_object()) fail("sweep", "must be an object");
      reject_unknown(s, "sweep", {"axis1", "axis2"});
      if (!s.contains("axis1")) fail("sweep.axis1", "missing");
      SweepSpec sw;
      sw.axis1 = parse_axis(s.at("axis1"), "sweep.axis1");
      if (s.contains("axis2")) {
        sw.axis2 = parse_axis(s.at("axis2"), "sweep.axis2");
        if (sw.axis2->name == sw.axis1.name) fail("sweep.axis2.name", "duplicates axis1");
      }
      cfg.sweep = sw;
    }
  }

  if (root.contains("output")) {
    const json& o = section(root, "output");
    reject_unknown(o, "output", {"path", "format"});
    if (o.contains("path")) cfg.output_path = text(o, "output", "path");
    if (o.contains("format")) {
      const std::string f = text(o, "output", "format");
      if (f == "csv") {
        cfg.format = OutputFormat::Csv;
      } else if (f == "json") {
        cfg.format = OutputFormat::Json;
      } else {
        fail("output.format", "must be \"csv\" or \"json\"");
      }
    }
  }

  if (root.contains("tolerances")) {
    const json& t = section(root, "tolerances");
    reject_unknown(t, "tolerances", {"quad_rel", "quad_abs"});
    if (auto v = maybe_number(t, "tolerances", "quad_rel")) {
      require_positive(*v, "tolerances.quad_rel");
      cfg.machine.quadrature.rel_tol = *v;
    }
    if (auto v = maybe_number(t, "tolerances", "quad_abs")) {
      require_positive(*v, "tolerances.quad_abs");
      cfg.machine.quadrature.abs_tol = *v;
    }
  }

  // Sweep axes must address fields that exist for this detector model.
  if (cfg.sweep) {
    std::vector<const AxisSpec*> axes = {&cfg.sweep->axis1};
    if (cfg.sweep->axis2) axes.push_back(&*cfg.sweep->axis2);
    for (const AxisSpec* a : axes) {
      const bool qpc_field = a->name.rfind("measurement.", 0) == 0 &&
                             a->name != "measurement.gamma_m";
      if (qpc_field && !cfg.machine.uses_qpc()) {
        fail("sweep", a->name + " requires the qpc detector");
      }
      if (a->name == "measurement.gamma_m" && cfg.machine.uses_qpc()) {
        fail("sweep", "measurement.gamma_m requires the ideal detector");
      }
      if (a->name == "measurement.t1" && cfg.calibration) {
        fail("sweep", "measurement.t1 cannot be swept together with a calibration");
      }
      if (a->name == "measurement.mu_m" && cfg.mu_m_over_omega) {
        fail("sweep", "measurement.mu_m cannot be swept when mu_m_over_omega is set");
      }
    }
  }
}

}  // namespace

std::vector<double> AxisSpec::values() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    if (scale == AxisScale::Log) {
      out[i] = std::exp(std::log(from) + t * (std::log(to) - std::log(from)));
    } else {
      out[i] = from + t * (to - from);
    }
  }
  out.front() = from;
  out.back() = to;
  return out;
}

const std::vector<std::string>& sweepable_fields() {
  static const std::vector<std::string> fields = {
      "dot.epsilon",        "dot.delta",          "dot.g",
      "leads.mu",           "leads.t_l",          "leads.t_r",
      "leads.t_r_ratio",    "leads.gamma",        "measurement.gamma_m",
      "measurement.t0",     "measurement.t1",     "measurement.mu_m",
      "measurement.mu_m_over_omega",              "measurement.t_m"};
  return fields;
}

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  RunConfig cfg;
  if (root.is_object() && root.contains("preset")) {
    const json& p = root.at("preset");
    if (!p.is_string()) fail("preset", "must be a string");
    auto base = preset_by_name(p.get<std::string>());
    if (!base) fail("preset", "unknown preset \"" + p.get<std::string>() + "\"");
    cfg = *base;
  }
  try {
    apply_document(root, cfg);
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

RunConfig preset_fig2() {
  RunConfig cfg;
  cfg.name = "fig2";
  cfg.machine.dot = DotParams(5.4, 4.3, 1.0);
  cfg.machine.leads = LeadPair{10.0, 2.0, 4.0, 0.01};
  cfg.machine.measurement = IdealMeasurement{1.0};
  cfg.sweep = SweepSpec{AxisSpec{"measurement.gamma_m", 1e-3, 10.0, 200, AxisScale::Log},
                        std::nullopt};
  return cfg;
}

RunConfig preset_fig3(int points_per_axis) {
  RunConfig cfg;
  cfg.name = "fig3";
  cfg.machine.dot = DotParams(5.4, 4.3, 1.0);
  cfg.machine.leads = LeadPair{10.0, 2.0, 4.0, 0.01};
  QpcParams q;
  q.t0 = 0.5;
  q.t1 = 0.0;
  q.t_m = 12.0;
  cfg.machine.measurement = QpcMeasurement{q};
  cfg.mu_m_over_omega = 1.0;
  cfg.calibration = CalibrationSpec{1.0, 12.0, 1.0};
  cfg.sweep = SweepSpec{
      AxisSpec{"measurement.mu_m_over_omega", 0.01, 20.0, points_per_axis, AxisScale::Log},
      AxisSpec{"measurement.t_m", 1.0, 40.0, points_per_axis, AxisScale::Log}};
  return cfg;
}

std::optional<RunConfig> preset_by_name(std::string_view name) {
  if (name == "fig2") return preset_fig2();
  if (name == "fig3") return preset_fig3();
  return std::nullopt;
}

void set_field(RunConfig& cfg, const std::string& field, double value) {
  MachineSpec& m = cfg.machine;
  const DotParams& d = m.dot;
  if (field == "dot.epsilon") {
    m.dot = DotParams(value, d.delta(), d.g());
  } else if (field == "dot.delta") {
    m.dot = DotParams(d.epsilon(), value, d.g());
  } else if (field == "dot.g") {
    m.dot = DotParams(d.epsilon(), d.delta(), value);
  } else if (field == "leads.mu") {
    m.leads.mu = value;
  } else if (field == "leads.t_l") {
    m.leads.t_l = value;
  } else if (field == "leads.t_r") {
    m.leads.t_r = value;
  } else if (field == "leads.t_r_ratio") {
    m.leads.t_r = value * m.leads.t_l;
  } else if (field == "leads.gamma") {
    m.leads.gamma = value;
  } else if (field == "measurement.gamma_m") {
    auto* ideal = std::get_if<IdealMeasurement>(&m.measurement);
    if (!ideal) throw ConfigError(field + ": requires the ideal detector");
    ideal->gamma_m = value;
  } else if (field.rfind("measurement.", 0) == 0) {
    auto* qpc = std::get_if<QpcMeasurement>(&m.measurement);
    if (!qpc) throw ConfigError(field + ": requires the qpc detector");
    if (field == "measurement.t0") {
      qpc->qpc.t0 = value;
    } else if (field == "measurement.t1") {
      qpc->qpc.t1 = value;
    } else if (field == "measurement.mu_m") {
      qpc->qpc.mu_m = value;
    } else if (field == "measurement.mu_m_over_omega") {
      cfg.mu_m_over_omega = value;
    } else if (field == "measurement.t_m") {
      qpc->qpc.t_m = value;
    } else {
      throw ConfigError(field + ": not a sweepable field");
    }
  } else {
    throw ConfigError(field + ": not a sweepable field");
  }
}

double calibrated_t1(const CalibrationSpec& cal, const DotParams& dot, double t0,
                     const QuadratureOptions& opts) {
  return calibrate_t1(t0, cal.gamma_m, cal.mu_m_over_omega * dot.omega(), cal.t_m, opts);
}

MachineSpec resolve_point(const RunConfig& cfg) {
  MachineSpec m = cfg.machine;
  if (auto* qpc = std::get_if<QpcMeasurement>(&m.measurement)) {
    if (cfg.mu_m_over_omega) qpc->qpc.mu_m = *cfg.mu_m_over_omega * m.dot.omega();
    if (cfg.calibration) {
      qpc->qpc.t1 = calibrated_t1(*cfg.calibration, m.dot, qpc->qpc.t0, m.quadrature);
    }
  }
  return m;
}

}  // namespace fridge
