// bihardy: numerical verification of weighted bilinear Hardy inequalities on
// radial metric measure spaces.
//
// Subcommands:
//   check          evaluate the weight conditions and the best-constant bracket
//   classify       closed-form power-weight verdict for the configured geometry
//   witness        search the truncated-power family for the best ratio
//   reduce-verify  consistency checks of the space/line reduction
//   calibrate      classical one-dimensional Hardy constant ladder
//
// Exit codes: 0 success / holds, 2 fails, 3 case not covered, 1 errors.

#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bihardy/config.hpp"
#include "bihardy/mathutil.hpp"

namespace {

using namespace bihardy;

struct CommonArgs {
  std::string config_path;
  bool as_json = false;
  std::string out_path;
  double rel_tol = -1.0;
  double abs_tol = -1.0;
  long long seed = -1;
  long long budget = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool need_config = true) {
  auto* opt = cmd->add_option("--config", args.config_path, "configuration file (JSON)");
  if (need_config) opt->required();
  cmd->add_flag("--json", args.as_json, "emit a JSON report on stdout");
  cmd->add_option("--out", args.out_path, "also write the JSON report to this path");
  cmd->add_option("--rel-tol", args.rel_tol, "override quadrature relative tolerance");
  cmd->add_option("--abs-tol", args.abs_tol, "override quadrature absolute tolerance");
  cmd->add_option("--seed", args.seed, "override the run seed");
  cmd->add_option("--budget", args.budget, "override the witness evaluation budget");
}

RunConfig load_with_overrides(const CommonArgs& args) {
  RunConfig cfg = args.config_path.empty() ? RunConfig{} : load_config_file(args.config_path);
  if (args.rel_tol > 0.0) cfg.quad.rel_tol = args.rel_tol;
  if (args.abs_tol > 0.0) cfg.quad.abs_tol = args.abs_tol;
  if (args.seed >= 0) cfg.witness.seed = static_cast<std::uint64_t>(args.seed);
  if (args.budget > 0) cfg.witness.budget = static_cast<int>(args.budget);
  return cfg;
}

void emit(const Json& j, const CommonArgs& args) {
  if (args.as_json) std::cout << j.dump(2) << "\n";
  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path);
    out << j.dump(2) << "\n";
  }
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

int cmd_check(const CommonArgs& args) {
  const RunConfig cfg = load_with_overrides(args);
  const ConditionReport report =
      eval_report(make_geometry(cfg), make_weights(cfg), make_exponents(cfg), cfg.quad);
  emit(report_to_json(report), args);
  if (!args.as_json) {
    std::cout << "case      : " << to_string(report.case_id.kind)
              << (report.case_id.swapped ? " (indices swapped)" : "") << "\n";
    for (const auto& [name, value] : report.b)
      std::cout << name << (name.size() < 3 ? "        : " : "    : ") << fmt(value) << "\n";
    if (report.bracket)
      std::cout << "bracket   : [" << fmt(report.bracket->first) << ", "
                << fmt(report.bracket->second) << "]\n";
    std::cout << "holds     : " << (report.holds ? "yes" : "no") << "\n";
    for (const std::string& d : report.diagnostics) std::cout << "note      : " << d << "\n";
  }
  if (report.case_id.kind == CaseId::Kind::NotCovered) return 3;
  if (report.undetermined) return 1;
  return report.holds ? 0 : 2;
}

int cmd_classify(const CommonArgs& args) {
  const RunConfig cfg = load_with_overrides(args);
  const RadialGeometry geo = make_geometry(cfg);
  if (cfg.u.form == "custom" || cfg.v1.form == "custom" || cfg.v2.form == "custom")
    throw ConfigError("classify needs power or sinh-power weights");
  PowerDatum datum{geo, cfg.u.exponent, cfg.v1.exponent, cfg.v2.exponent, make_exponents(cfg)};
  Verdict verdict;
  switch (geo.kind()) {
    case GeometryKind::Homogeneous: verdict = classify_homogeneous(datum); break;
    case GeometryKind::Hyperbolic: verdict = classify_hyperbolic(datum); break;
    case GeometryKind::CartanHadamardConst: verdict = classify_cartan_hadamard(datum); break;
  }
  Json j = verdict_to_json(verdict);
  j["case"] = to_string(dispatch_case(datum.exps).kind);
  emit(j, args);
  if (!args.as_json) {
    std::cout << "verdict: " << to_string(verdict.kind) << "\n";
    if (!verdict.reason.empty()) std::cout << "reason : " << verdict.reason << "\n";
    for (const ConditionSlack& c : verdict.conditions)
      std::cout << "  " << c.name << " = " << fmt(c.value) << " " << c.relation << " "
                << fmt(c.bound) << (c.satisfied ? "  ok" : "  violated") << "\n";
  }
  switch (verdict.kind) {
    case Verdict::Kind::NotCovered: return 3;
    case Verdict::Kind::Fails: return 2;
    default: return 0;
  }
}

int cmd_witness(const CommonArgs& args) {
  const RunConfig cfg = load_with_overrides(args);
  const RadialGeometry geo = make_geometry(cfg);
  const WeightTriple w = make_weights(cfg);
  const ExponentSystem exps = make_exponents(cfg);
  WitnessDatum datum{build_line_weights(geo, w, exps), exps, cfg.quad};
  const RatioWitness witness = search_best_ratio(datum, cfg.witness);
  emit(witness_to_json(witness, cfg.witness.seed), args);
  if (!cfg.trace_csv.empty()) {
    std::ofstream out(cfg.trace_csv);
    out << witness_trace_csv(witness);
  }
  if (!args.as_json)
    std::cout << "best ratio " << fmt(witness.ratio) << " at a1=" << fmt(witness.a1)
              << " a2=" << fmt(witness.a2) << " window=(" << fmt(witness.t_lo) << ", "
              << fmt(witness.t_hi) << ") after " << witness.evals << " evaluations\n";
  return 0;
}

int cmd_reduce_verify(const CommonArgs& args) {
  const RunConfig cfg = load_with_overrides(args);
  const RadialGeometry geo = make_geometry(cfg);
  const WeightTriple w = make_weights(cfg);
  const ExponentSystem exps = make_exponents(cfg);
  const LineWeights lw = build_line_weights(geo, w, exps);

  int failures = 0;
  auto check = [&failures](const std::string& name, bool ok) {
    std::cout << (ok ? "pass" : "FAIL") << "  " << name << "\n";
    if (!ok) ++failures;
  };

  const LineFunction F1 = LineFunction::power_trunc(0.5, 0.1, 10.0);
  const LineFunction F2 = LineFunction::power_trunc(-0.25, 0.3, 4.0);

  for (int i = 1; i <= 2; ++i) {
    const LineFunction& F = i == 1 ? F1 : F2;
    const RadialFunction f = lift(F, geo, w, exps, i);
    const LineFunction back = project(f, geo);
    bool ok = true;
    for (int k = 0; k <= 50; ++k) {
      const double t = F.support_lo() * std::pow(F.support_hi() / F.support_lo(), k / 50.0);
      const double a = F(t), b = back(t);
      if (a == 0.0 && b == 0.0) continue;
      if (!close_rel(a, b, 1e-12)) ok = false;
    }
    check("project(lift(F" + std::to_string(i) + ")) = F" + std::to_string(i), ok);
  }

  const RadialFunction f1 = lift(F1, geo, w, exps, 1);
  const RadialFunction f2 = lift(F2, geo, w, exps, 2);
  const double ls = lhs_space(f1, f2, geo, w.u, exps.q(), cfg.quad);
  const double ll = lhs_line(project(f1, geo), project(f2, geo), lw, exps.q(), cfg.quad);
  check("lhs_space = lhs_line", close_rel(ls, ll, 1e-6));
  for (int i = 1; i <= 2; ++i) {
    const LineFunction& F = i == 1 ? F1 : F2;
    const RadialFunction f = i == 1 ? f1 : f2;
    const double rs = rhs_space(f, geo, w.v(i), exps.p(i), cfg.quad);
    const double rl = rhs_line(F, lw, i, exps, cfg.quad);
    check("rhs_space = rhs_line (i=" + std::to_string(i) + ")", close_rel(rs, rl, 1e-6));
  }
  return failures == 0 ? 0 : 2;
}

int cmd_calibrate(const CommonArgs& args) {
  const RunConfig cfg = load_with_overrides(args);
  const double ceiling =
      std::pow(cfg.calib_p / (cfg.calib_p - 1.0 - cfg.calib_eps), cfg.calib_p);
  Json rows = Json::array();
  std::cout << "p=" << cfg.calib_p << " eps=" << cfg.calib_eps << " sharp constant "
            << fmt(ceiling) << "\n";
  bool ok = true;
  double prev = 0.0;
  std::vector<double> deltas = cfg.calib_deltas;
  std::sort(deltas.rbegin(), deltas.rend());
  for (double d : deltas) {
    const double r = classic_hardy_calibration(cfg.calib_p, cfg.calib_eps, d, cfg.quad);
    std::cout << "  delta=" << fmt(d) << "  ratio=" << fmt(r) << "\n";
    Json row;
    row["delta"] = d;
    row["ratio"] = r;
    rows.push_back(row);
    if (!(r > prev) || !(r < ceiling)) ok = false;
    prev = r;
  }
  Json j;
  j["p"] = cfg.calib_p;
  j["eps"] = cfg.calib_eps;
  j["ceiling"] = ceiling;
  j["rows"] = rows;
  j["monotone_below_ceiling"] = ok;
  emit(j, args);
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted bilinear Hardy inequality checker"};
  app.require_subcommand(1);

  CommonArgs check_args, classify_args, witness_args, reduce_args, calib_args;
  CLI::App* check = app.add_subcommand("check", "evaluate weight conditions and bracket");
  add_common(check, check_args);
  CLI::App* classify = app.add_subcommand("classify", "closed-form power-weight verdict");
  add_common(classify, classify_args);
  CLI::App* witness = app.add_subcommand("witness", "search for the best inequality ratio");
  add_common(witness, witness_args);
  CLI::App* reduce = app.add_subcommand("reduce-verify", "space/line reduction consistency");
  add_common(reduce, reduce_args);
  CLI::App* calibrate = app.add_subcommand("calibrate", "classical Hardy constant ladder");
  add_common(calibrate, calib_args, false);

  try {
    app.parse(argc, argv);
    if (check->parsed()) return cmd_check(check_args);
    if (classify->parsed()) return cmd_classify(classify_args);
    if (witness->parsed()) return cmd_witness(witness_args);
    if (reduce->parsed()) return cmd_reduce_verify(reduce_args);
    if (calibrate->parsed()) return cmd_calibrate(calib_args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
