#include "bihardy/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bihardy/mathutil.hpp"

namespace bihardy {

namespace {

void reject_unknown(const Json& j, const std::vector<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown key '" + where + key + "'");
  }
}

double need_number(const Json& j, const std::string& key, const std::string& where,
                   std::optional<double> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError("missing field '" + where + key + "'");
  }
  if (!j[key].is_number()) throw ConfigError("field '" + where + key + "' must be a number");
  return j[key].get<double>();
}

WeightSpec parse_weight(const Json& j, const std::string& where) {
  reject_unknown(j, {"form", "exponent", "scale", "name"}, where);
  WeightSpec w;
  w.form = j.value("form", "power");
  if (w.form != "power" && w.form != "sinh_power" && w.form != "custom")
    throw ConfigError("field '" + where + "form' must be power, sinh_power or custom");
  if (w.form == "custom") {
    if (!j.contains("name") || !j["name"].is_string())
      throw ConfigError("custom weight needs a 'name' at " + where);
    w.name = j["name"].get<std::string>();
  } else {
    w.exponent = need_number(j, "exponent", where);
    w.scale = need_number(j, "scale", where, 1.0);
  }
  return w;
}

}  // namespace

RunConfig parse_config(const Json& j) {
  reject_unknown(j, {"geometry", "exponents", "weights", "quadrature", "witness", "classify",
                     "calibrate"},
                 "");
  RunConfig cfg;

  if (j.contains("geometry")) {
    const Json& g = j["geometry"];
    reject_unknown(g, {"kind", "dim", "b", "sphere_area"}, "geometry.");
    cfg.geometry_kind = g.value("kind", "homogeneous");
    if (cfg.geometry_kind != "homogeneous" && cfg.geometry_kind != "hyperbolic" &&
        cfg.geometry_kind != "cartan_hadamard")
      throw ConfigError("geometry.kind must be homogeneous, hyperbolic or cartan_hadamard");
    cfg.dim = need_number(g, "dim", "geometry.");
    cfg.curvature_b = need_number(g, "b", "geometry.", 0.0);
    cfg.sphere_area = need_number(g, "sphere_area", "geometry.", 1.0);
  }
  if (j.contains("exponents")) {
    const Json& e = j["exponents"];
    reject_unknown(e, {"p1", "p2", "q"}, "exponents.");
    cfg.p1 = need_number(e, "p1", "exponents.");
    cfg.p2 = need_number(e, "p2", "exponents.");
    cfg.q = need_number(e, "q", "exponents.");
  }
  if (j.contains("weights")) {
    const Json& w = j["weights"];
    reject_unknown(w, {"u", "v1", "v2"}, "weights.");
    if (w.contains("u")) cfg.u = parse_weight(w["u"], "weights.u.");
    if (w.contains("v1")) cfg.v1 = parse_weight(w["v1"], "weights.v1.");
    if (w.contains("v2")) cfg.v2 = parse_weight(w["v2"], "weights.v2.");
  }
  if (j.contains("quadrature")) {
    const Json& q = j["quadrature"];
    reject_unknown(q, {"rel_tol", "abs_tol", "max_depth", "sniff_points"}, "quadrature.");
    cfg.quad.rel_tol = need_number(q, "rel_tol", "quadrature.", cfg.quad.rel_tol);
    cfg.quad.abs_tol = need_number(q, "abs_tol", "quadrature.", cfg.quad.abs_tol);
    cfg.quad.max_depth =
        static_cast<int>(need_number(q, "max_depth", "quadrature.", cfg.quad.max_depth));
    cfg.quad.sniff_points =
        static_cast<int>(need_number(q, "sniff_points", "quadrature.", cfg.quad.sniff_points));
    if (!(cfg.quad.rel_tol > 0.0) || !(cfg.quad.abs_tol > 0.0))
      throw ConfigError("quadrature tolerances must be positive");
  }
  if (j.contains("witness")) {
    const Json& w = j["witness"];
    reject_unknown(w, {"budget", "restarts", "seed", "a_min", "a_max", "log_tlo_min",
                       "log_tlo_max", "log_thi_min", "log_thi_max", "trace_csv"},
                   "witness.");
    cfg.witness.budget = static_cast<int>(need_number(w, "budget", "witness.", 2000));
    cfg.witness.restarts = static_cast<int>(need_number(w, "restarts", "witness.", 8));
    cfg.witness.seed = static_cast<std::uint64_t>(need_number(w, "seed", "witness.", 1));
    ParamBox& b = cfg.witness.box;
    b.a_min = need_number(w, "a_min", "witness.", b.a_min);
    b.a_max = need_number(w, "a_max", "witness.", b.a_max);
    b.log_tlo_min = need_number(w, "log_tlo_min", "witness.", b.log_tlo_min);
    b.log_tlo_max = need_number(w, "log_tlo_max", "witness.", b.log_tlo_max);
    b.log_thi_min = need_number(w, "log_thi_min", "witness.", b.log_thi_min);
    b.log_thi_max = need_number(w, "log_thi_max", "witness.", b.log_thi_max);
    if (w.contains("trace_csv")) cfg.trace_csv = w["trace_csv"].get<std::string>();
  }
  if (j.contains("classify")) {
    const Json& c = j["classify"];
    reject_unknown(c, {"grid"}, "classify.");
    cfg.classify_grid = static_cast<int>(need_number(c, "grid", "classify.", 100));
  }
  if (j.contains("calibrate")) {
    const Json& c = j["calibrate"];
    reject_unknown(c, {"p", "eps", "deltas"}, "calibrate.");
    cfg.calib_p = need_number(c, "p", "calibrate.", 2.0);
    cfg.calib_eps = need_number(c, "eps", "calibrate.", 0.0);
    if (c.contains("deltas")) {
      if (!c["deltas"].is_array()) throw ConfigError("calibrate.deltas must be an array");
      cfg.calib_deltas = c["deltas"].get<std::vector<double>>();
    }
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return parse_config(j);
}

RadialGeometry make_geometry(const RunConfig& cfg) {
  if (cfg.geometry_kind == "homogeneous")
    return RadialGeometry::homogeneous(cfg.dim, cfg.sphere_area);
  if (cfg.geometry_kind == "hyperbolic") return RadialGeometry::hyperbolic(cfg.dim);
  return RadialGeometry::cartan_hadamard(cfg.dim, cfg.curvature_b);
}

std::vector<std::string> custom_weight_names() {
  return {"exp_decay", "gauss_log", "inverse_quartic"};
}

RadialWeight make_weight(const WeightSpec& spec) {
  if (spec.form == "power") return RadialWeight::power(spec.exponent);
  if (spec.form == "sinh_power") return RadialWeight::sinh_power(spec.exponent, spec.scale);
  if (spec.name == "exp_decay")
    return RadialWeight::custom([](double r) { return std::exp(-r); });
  if (spec.name == "gauss_log")
    return RadialWeight::custom([](double r) {
      const double l = std::log(r);
      return std::exp(-l * l);
    });
  if (spec.name == "inverse_quartic")
    return RadialWeight::custom([](double r) { return 1.0 / ((1.0 + r * r) * (1.0 + r * r)); },
                                std::make_pair(0.0, -4.0));
  throw ConfigError("unknown custom weight '" + spec.name + "'");
}

WeightTriple make_weights(const RunConfig& cfg) {
  return WeightTriple{make_weight(cfg.u), make_weight(cfg.v1), make_weight(cfg.v2)};
}

ExponentSystem make_exponents(const RunConfig& cfg) {
  return ExponentSystem(cfg.p1, cfg.p2, cfg.q);
}

namespace {

Json number_or_inf(double v) {
  if (std::isinf(v)) return Json(v > 0 ? "inf" : "-inf");
  if (std::isnan(v)) return Json("nan");
  return Json(v);
}

}  // namespace

Json report_to_json(const ConditionReport& report) {
  Json j;
  j["case"] = to_string(report.case_id.kind);
  j["swapped"] = report.case_id.swapped;
  for (const char* name : {"B1", "B2", "B3", "B4", "B5", "B6", "B6_alt"}) {
    const auto it = report.b.find(name);
    if (it != report.b.end()) j[name] = number_or_inf(it->second);
  }
  if (report.bracket) {
    j["c_low"] = number_or_inf(report.bracket->first);
    j["c_high"] = number_or_inf(report.bracket->second);
  } else {
    j["c_low"] = nullptr;
    j["c_high"] = nullptr;
  }
  j["holds"] = report.holds;
  j["required"] = report.required;
  j["diagnostics"] = report.diagnostics;
  return j;
}

Json verdict_to_json(const Verdict& verdict) {
  Json j;
  j["verdict"] = to_string(verdict.kind);
  j["reason"] = verdict.reason;
  Json conds = Json::array();
  for (const ConditionSlack& c : verdict.conditions) {
    Json e;
    e["name"] = c.name;
    e["value"] = number_or_inf(c.value);
    e["relation"] = c.relation;
    e["bound"] = c.bound;
    e["satisfied"] = c.satisfied;
    e["borderline"] = c.borderline;
    conds.push_back(e);
  }
  j["conditions"] = conds;
  return j;
}

Json witness_to_json(const RatioWitness& witness, std::uint64_t seed) {
  Json j;
  j["ratio"] = number_or_inf(witness.ratio);
  j["a1"] = witness.a1;
  j["a2"] = witness.a2;
  j["t_lo"] = witness.t_lo;
  j["t_hi"] = witness.t_hi;
  j["evals"] = witness.evals;
  j["seed"] = seed;
  return j;
}

std::string witness_trace_csv(const RatioWitness& witness) {
  std::ostringstream out;
  out << "eval_index,a1,a2,log_tlo,log_thi,ratio\n";
  out.precision(12);
  for (const TraceRow& row : witness.trace) {
    out << row.eval_index << ',' << row.a1 << ',' << row.a2 << ',' << row.log_tlo << ','
        << row.log_thi << ',' << row.ratio << '\n';
  }
  return out.str();
}

}  // namespace bihardy
