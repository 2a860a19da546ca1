#include "trp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "trp/error.hpp"
#include "trp/simulation.hpp"

namespace trp::cli {

using nlohmann::json;

namespace {

constexpr const char* kSchemaVersion = "1";
constexpr double kDefaultTau0 = 80.0;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string trp_str(double v) { return std::isfinite(v) ? fmt("%.2e", v) : "n/a"; }
std::string fid_str(double v) { return std::isfinite(v) ? fmt("%.6f", v) : "n/a"; }

[[noreturn]] void config_fail(const std::string& msg) { throw Error(ErrorCode::invalid_config, msg); }

template <class T>
void take(std::optional<T>& dst, const json& j, const char* key) {
  if (dst || !j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_fail(std::string("config key '") + key + "': " + e.what());
  }
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_nan(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nan("");
  return j.at(key).get<double>();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) config_fail("cannot open output file '" + path + "'");
  f << content;
  if (!f) config_fail("failed writing output file '" + path + "'");
}

std::string sweep_label(const RunConfig& cfg) {
  std::ostringstream os;
  if (cfg.two_qubit()) {
    os << "lambda=" << cfg.two.lambda << " eta4=" << cfg.two.eta4 << " tau0=" << cfg.two.tau0 << " c4=" << cfg.two.c4
       << " d1=" << cfg.two.d1 << " d2=" << cfg.two.d2 << " d3=" << cfg.two.d3 << " d4=" << cfg.two.d4;
  } else {
    os << "lambda=" << cfg.one.lambda << " eta4=" << cfg.one.eta4 << " tau0=" << cfg.one.tau0;
  }
  return os.str();
}

}  // namespace

void merge_config(Options& o, const json& j) {
  static const char* const kKeys[] = {"gate", "preset", "method", "format", "out", "parameter", "lambda", "eta4",
                                      "tau0", "c4", "d1", "d2", "d3", "d4", "a", "b", "B", "T0", "hbar",
                                      "r_weight", "tolerance", "seed", "max_evals", "include_trace"};
  if (!j.is_object()) config_fail("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) config_fail("unknown config key '" + key + "'");
  }
  take(o.gate, j, "gate");
  take(o.preset, j, "preset");
  take(o.method, j, "method");
  take(o.format, j, "format");
  take(o.out, j, "out");
  take(o.parameter, j, "parameter");
  take(o.lambda, j, "lambda");
  take(o.eta4, j, "eta4");
  take(o.tau0, j, "tau0");
  take(o.c4, j, "c4");
  take(o.d1, j, "d1");
  take(o.d2, j, "d2");
  take(o.d3, j, "d3");
  take(o.d4, j, "d4");
  take(o.a, j, "a");
  take(o.b, j, "b");
  take(o.B, j, "B");
  take(o.T0, j, "T0");
  take(o.hbar, j, "hbar");
  take(o.r_weight, j, "r_weight");
  take(o.tolerance, j, "tolerance");
  take(o.seed, j, "seed");
  take(o.max_evals, j, "max_evals");
  take(o.include_trace, j, "include_trace");
}

OneQubitSweep preset_one_qubit(Gate g) {
  switch (g) {
    case Gate::not_gate: return {6.965, 2.189e-4, 80.000};
    case Gate::hadamard: return {7.820, 1.792e-4, 80.000};
    case Gate::mod_pi8: return {8.465, 1.675e-4, 80.000};
    case Gate::mod_phase: return {8.073, 1.666e-4, 80.000};
    case Gate::mod_cphase: break;
  }
  config_fail("preset one-qubit has no entry for " + std::string(gate_id(g)));
}

TwoQubitSweep preset_two_qubit() { return {5.04, 3.0e-4, 120.00, 2.173, 99.3, 0.0, -0.41, 0.8347}; }

std::optional<Reference> published_reference(Gate g) {
  switch (g) {
    case Gate::not_gate: return Reference{6.27e-5, 0.99998};
    case Gate::hadamard: return Reference{1.12e-4, 0.99997};
    case Gate::mod_pi8: return Reference{2.13e-4, 0.99995};
    case Gate::mod_phase: return Reference{4.62e-4, 0.99988};
    case Gate::mod_cphase: break;
  }
  return std::nullopt;
}

RunConfig resolve(const std::string& command, const Options& o) {
  RunConfig cfg;
  cfg.command = command;
  if (o.preset) {
    cfg.preset = *o.preset;
    if (cfg.preset != "one-qubit" && cfg.preset != "two-qubit") config_fail("preset must be one-qubit or two-qubit");
  }
  if (o.gate) {
    cfg.gate = parse_gate(*o.gate);
  } else if (cfg.preset == "two-qubit") {
    cfg.gate = Gate::mod_cphase;
  } else {
    config_fail("--gate is required");
  }
  if (cfg.preset == "two-qubit" && !cfg.two_qubit()) config_fail("preset two-qubit is the MOD_CPHASE set");
  if (cfg.preset == "one-qubit" && cfg.two_qubit()) config_fail("preset one-qubit covers one-qubit gates only");

  const bool physical = o.a || o.b || o.B || o.T0 || o.hbar;
  const bool dimensionless = o.lambda || o.eta4 || o.tau0;
  if (physical && dimensionless) config_fail("give either physical (a, b, B, T0, hbar) or dimensionless sweep parameters, not both");

  if (cfg.two_qubit()) {
    if (physical) config_fail("physical-unit entry is available for one-qubit sweeps only");
    if (!cfg.preset.empty()) cfg.two = preset_two_qubit();
    else if (!o.lambda || !o.eta4 || !o.tau0) config_fail("two-qubit runs need --lambda, --eta4 and --tau0 (or --preset two-qubit)");
    if (o.lambda) cfg.two.lambda = *o.lambda;
    if (o.eta4) cfg.two.eta4 = *o.eta4;
    if (o.tau0) cfg.two.tau0 = *o.tau0;
    if (o.c4) cfg.two.c4 = *o.c4;
    if (o.d1) cfg.two.d1 = *o.d1;
    if (o.d2) cfg.two.d2 = *o.d2;
    if (o.d3) cfg.two.d3 = *o.d3;
    if (o.d4) cfg.two.d4 = *o.d4;
    validate(cfg.two);
  } else {
    if (o.c4 || o.d1 || o.d2 || o.d3 || o.d4) config_fail("c4 and d1..d4 apply to the two-qubit gate only");
    if (physical) {
      if (!cfg.preset.empty()) config_fail("physical parameters cannot be combined with a preset");
      if (!o.a || !o.b || !o.B || !o.T0) config_fail("physical entry needs a, b, B and T0");
      PhysicalSweep p{*o.a, *o.b, *o.B, *o.T0, o.hbar.value_or(1.0)};
      cfg.physical = p;
      cfg.one = to_dimensionless(p);
    } else {
      if (!cfg.preset.empty()) cfg.one = preset_one_qubit(cfg.gate);
      else if (!o.lambda || !o.eta4) config_fail("one-qubit runs need --lambda and --eta4 (or --preset one-qubit)");
      else cfg.one.tau0 = kDefaultTau0;
      if (o.lambda) cfg.one.lambda = *o.lambda;
      if (o.eta4) cfg.one.eta4 = *o.eta4;
      if (o.tau0) cfg.one.tau0 = *o.tau0;
    }
    validate(cfg.one);
  }

  if (o.tolerance) {
    cfg.integrator.rel_tolerance = *o.tolerance;
    cfg.integrator.abs_tolerance = *o.tolerance * 1e-2;
  }
  validate(cfg.integrator);

  if (o.r_weight) cfg.cost.r_weight = *o.r_weight;
  validate(cfg.cost);

  if (o.method) cfg.optimizer.method = parse_method(*o.method);
  else cfg.optimizer.method = cfg.two_qubit() ? Method::anneal : Method::simplex;
  if (o.seed) cfg.optimizer.anneal.rng_seed = *o.seed;
  if (o.max_evals) {
    cfg.optimizer.simplex.max_evals = *o.max_evals;
    cfg.optimizer.anneal.max_evals = *o.max_evals;
  }
  validate(cfg.optimizer.simplex);
  validate(cfg.optimizer.anneal);

  if (o.parameter) cfg.scan_parameter = parse_scan_parameter(*o.parameter);
  if (command == "scan" && cfg.two_qubit()) config_fail("scan supports one-qubit gates only");

  cfg.format = o.format.value_or(command == "scan" ? "csv" : "json");
  if (cfg.format != "csv" && cfg.format != "json") config_fail("format must be csv or json");
  cfg.out = o.out.value_or("");
  cfg.include_trace = o.include_trace.value_or(true);
  return cfg;
}

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["gate"] = gate_id(c.gate);
  j["preset"] = c.preset.empty() ? json(nullptr) : json(c.preset);
  if (c.two_qubit()) {
    j["sweep"] = {{"lambda", c.two.lambda}, {"eta4", c.two.eta4}, {"tau0", c.two.tau0}, {"c4", c.two.c4},
                  {"d1", c.two.d1}, {"d2", c.two.d2}, {"d3", c.two.d3}, {"d4", c.two.d4}};
  } else {
    j["sweep"] = {{"lambda", c.one.lambda}, {"eta4", c.one.eta4}, {"tau0", c.one.tau0}};
  }
  if (c.physical) {
    j["physical"] = {{"a", c.physical->a}, {"b", c.physical->b}, {"B", c.physical->B}, {"T0", c.physical->T0},
                     {"hbar", c.physical->hbar}};
  }
  j["integrator"] = {{"rel_tolerance", c.integrator.rel_tolerance},
                     {"abs_tolerance", c.integrator.abs_tolerance},
                     {"max_steps", c.integrator.max_steps}};
  j["cost_model"] = {{"r_weight", c.cost.r_weight},
                     {"l1_threshold", c.cost.l1_threshold},
                     {"step_significant_figure", c.cost.step_significant_figure}};
  const auto& s = c.optimizer.simplex;
  const auto& a = c.optimizer.anneal;
  j["optimizer"] = {{"method", method_id(c.optimizer.method)},
                    {"simplex",
                     {{"initial_spread", s.initial_spread}, {"reflection", s.reflection}, {"expansion", s.expansion},
                      {"contraction", s.contraction}, {"shrink", s.shrink}, {"tolerance", s.tolerance},
                      {"x_tolerance", s.x_tolerance}, {"max_evals", s.max_evals}, {"restarts", s.restarts}}},
                    {"anneal",
                     {{"initial_temperature", a.initial_temperature}, {"cooling_factor", a.cooling_factor},
                      {"steps_per_temperature", a.steps_per_temperature}, {"proposal_scale", a.proposal_scale},
                      {"min_temperature", a.min_temperature}, {"rng_seed", a.rng_seed}, {"max_evals", a.max_evals}}}};
  if (c.command == "scan") j["parameter"] = parameter_id(c.scan_parameter);
  j["format"] = c.format;
  return j;
}

json to_json(const OptimizationRecord& r, bool include_trace) {
  json j;
  j["method"] = r.method;
  j["parameter_names"] = r.parameter_names;
  j["start_x"] = r.start_x;
  j["start_cost"] = nullable(r.start_cost);
  j["best_x"] = r.best_x;
  j["best_cost"] = nullable(r.best_cost);
  j["best_trace_p"] = nullable(r.best_trace_p);
  j["best_fidelity"] = nullable(r.best_fidelity);
  j["hessian_l1"] = nullable(r.hessian_l1);
  j["best_penalty"] = nullable(r.best_penalty);
  j["unitarity_defect"] = nullable(r.unitarity_defect);
  j["evaluations"] = r.evaluations;
  j["budget_exhausted"] = r.budget_exhausted;
  j["improved"] = r.improved();
  if (include_trace) {
    json t = json::array();
    for (const auto& p : r.trace) t.push_back({p.iteration, nullable(p.cost)});
    j["trace"] = t;
  }
  return j;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  double trace_p = 0.0, fid = 0.0, po = 0.0, defect = 0.0;
  std::size_t steps = 0, rejected = 0;
  if (cfg.two_qubit()) {
    const auto run = simulate_gate(cfg.gate, cfg.two, cfg.integrator);
    trace_p = run.score.trace_p;
    fid = run.score.fidelity;
    po = run.score.phase_optimized_trace_p;
    defect = run.propagation.max_unitarity_defect;
    steps = run.propagation.steps_taken;
    rejected = run.propagation.steps_rejected;
  } else {
    const auto run = simulate_gate(cfg.gate, cfg.one, cfg.integrator);
    trace_p = run.score.trace_p;
    fid = run.score.fidelity;
    po = run.score.phase_optimized_trace_p;
    defect = run.propagation.max_unitarity_defect;
    steps = run.propagation.steps_taken;
    rejected = run.propagation.steps_rejected;
  }

  out << "gate " << gate_id(cfg.gate) << "  " << sweep_label(cfg) << "\n";
  out << "  Tr P = " << trp_str(trace_p) << "  F = " << fid_str(fid) << "  unitarity defect = " << fmt("%.2e", defect)
      << "\n";
  out << "  phase-optimized Tr P (diagnostic) = " << trp_str(po) << "  steps = " << steps << " (" << rejected
      << " rejected)\n";

  if (!cfg.out.empty()) {
    if (cfg.format == "json") {
      json j;
      j["schema_version"] = kSchemaVersion;
      j["kind"] = "simulation";
      j["gate"] = gate_id(cfg.gate);
      j["qubits"] = gate_qubits(cfg.gate);
      j["config"] = to_json(cfg);
      j["result"] = {{"trace_p", trace_p},  {"fidelity", fid},       {"phase_optimized_trace_p", po},
                     {"unitarity_defect", defect}, {"steps_taken", steps}, {"steps_rejected", rejected}};
      write_file(cfg.out, j.dump(2) + "\n");
    } else {
      std::ostringstream os;
      os << "gate,lambda,eta4,tau0,trace_p,fidelity,unitarity_defect\n";
      const double l = cfg.two_qubit() ? cfg.two.lambda : cfg.one.lambda;
      const double e = cfg.two_qubit() ? cfg.two.eta4 : cfg.one.eta4;
      const double t = cfg.two_qubit() ? cfg.two.tau0 : cfg.one.tau0;
      os << gate_id(cfg.gate) << "," << fmt("%.6g", l) << "," << fmt("%.6g", e) << "," << fmt("%.6g", t) << ","
         << trp_str(trace_p) << "," << fid_str(fid) << "," << fmt("%.2e", defect) << "\n";
      write_file(cfg.out, os.str());
    }
  }
  return ok;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  const auto rows = sensitivity_scan(cfg.gate, cfg.one, cfg.scan_parameter, cfg.integrator);
  std::ostringstream csv;
  write_scan_csv(csv, rows);
  out << csv.str();
  if (!cfg.out.empty()) {
    if (cfg.format == "csv") {
      write_file(cfg.out, csv.str());
    } else {
      json j;
      j["schema_version"] = kSchemaVersion;
      j["kind"] = "scan";
      j["gate"] = gate_id(cfg.gate);
      j["qubits"] = 1;
      j["config"] = to_json(cfg);
      json rs = json::array();
      for (const auto& r : rows)
        rs.push_back({{"parameter", r.parameter}, {"value", r.value}, {"trace_p", r.trace_p}, {"fidelity", r.fidelity}});
      j["rows"] = rs;
      write_file(cfg.out, j.dump(2) + "\n");
    }
  }
  return ok;
}

int cmd_optimize(const RunConfig& cfg, std::ostream& out) {
  const OptimizationRecord rec = cfg.two_qubit()
                                     ? optimize_gate(cfg.gate, cfg.two, cfg.cost, cfg.optimizer, cfg.integrator)
                                     : optimize_gate(cfg.gate, cfg.one, cfg.cost, cfg.optimizer, cfg.integrator);

  out << "gate " << gate_id(cfg.gate) << "  method " << rec.method << "  evaluations " << rec.evaluations << "\n";
  for (std::size_t i = 0; i < rec.best_x.size(); ++i) {
    out << "  " << rec.parameter_names[i] << ": " << fmt("%.6g", rec.start_x[i]) << " -> " << fmt("%.8g", rec.best_x[i])
        << "\n";
  }
  out << "  best Tr P = " << trp_str(rec.best_trace_p) << "  F = " << fid_str(rec.best_fidelity)
      << "  ||H||_1 = " << (std::isfinite(rec.hessian_l1) ? fmt("%.4g", rec.hessian_l1) : "n/a") << "\n";
  if (cfg.cost.r_weight == 0.0) {
    out << "  penalty disabled (r = 0): cost is pure Tr P\n";
  } else if (rec.best_penalty > 0.0) {
    out << "  penalty active: r = " << fmt("%.3g", cfg.cost.r_weight) << ", r*P = " << fmt("%.3e", cfg.cost.r_weight * rec.best_penalty)
        << ", cost = " << fmt("%.3e", rec.best_cost) << "\n";
  } else {
    out << "  penalty inactive: ||H||_1 within threshold " << fmt("%g", cfg.cost.l1_threshold) << "\n";
  }

  if (!cfg.out.empty()) {
    if (cfg.format == "json") {
      json j;
      j["schema_version"] = kSchemaVersion;
      j["kind"] = "optimization";
      j["gate"] = gate_id(cfg.gate);
      j["qubits"] = gate_qubits(cfg.gate);
      j["config"] = to_json(cfg);
      j["result"] = to_json(rec, cfg.include_trace);
      write_file(cfg.out, j.dump(2) + "\n");
    } else {
      std::ostringstream os;
      os << "iteration,cost\n";
      for (const auto& p : rec.trace) os << p.iteration << "," << fmt("%.17g", p.cost) << "\n";
      write_file(cfg.out, os.str());
    }
  }

  if (rec.budget_exhausted && !rec.improved()) {
    out << "  evaluation budget exhausted without improving on the start point\n";
    return budget_exhausted;
  }
  return ok;
}

int cmd_report(const std::vector<std::string>& paths, const std::string& out_path, std::ostream& out) {
  if (paths.empty()) config_fail("report needs at least one record file");

  struct Row {
    std::string source, gate, params, status;
    double trace_p, fidelity, ref_trace_p, ref_fidelity;
  };
  std::vector<Row> rows;
  for (const auto& path : paths) {
    std::ifstream f(path);
    if (!f) config_fail("cannot read record '" + path + "'");
    try {
      const json j = json::parse(f);
      if (j.at("schema_version").get<std::string>() != kSchemaVersion) config_fail("unsupported schema_version in '" + path + "'");
      const std::string kind = j.at("kind").get<std::string>();
      const Gate g = parse_gate(j.at("gate").get<std::string>());
      Row row{path, std::string(gate_id(g)), "", "", 0.0, 0.0, std::nan(""), std::nan("")};
      const json& sweep = j.at("config").at("sweep");
      double lambda = sweep.at("lambda").get<double>();
      double eta4 = sweep.at("eta4").get<double>();
      if (kind == "simulation") {
        row.trace_p = j.at("result").at("trace_p").get<double>();
        row.fidelity = j.at("result").at("fidelity").get<double>();
      } else if (kind == "optimization") {
        const json& r = j.at("result");
        row.trace_p = number_or_nan(r, "best_trace_p");
        row.fidelity = number_or_nan(r, "best_fidelity");
        const auto names = r.at("parameter_names").get<std::vector<std::string>>();
        const auto best = r.at("best_x").get<std::vector<double>>();
        for (std::size_t i = 0; i < names.size() && i < best.size(); ++i) {
          if (names[i] == "lambda") lambda = best[i];
          if (names[i] == "eta4") eta4 = best[i];
        }
      } else {
        config_fail("record '" + path + "' has unsupported kind '" + kind + "'");
      }
      row.params = fmt("%.6g", lambda) + "," + fmt("%.4e", eta4);
      if (const auto ref = published_reference(g)) {
        row.ref_trace_p = ref->trace_p;
        row.ref_fidelity = ref->fidelity;
        const double ratio = row.trace_p / ref->trace_p;
        const bool in_band = ratio >= 1.0 / 3.0 && ratio <= 3.0 && std::abs(row.fidelity - ref->fidelity) <= 5e-4;
        row.status = in_band ? "within band" : (ratio < 1.0 ? "outside band (below reference)" : "outside band (above reference)");
      } else {
        row.status = "no published reference: group-symmetrized evolution not modelled";
      }
      rows.push_back(row);
    } catch (const json::exception& e) {
      config_fail("malformed record '" + path + "': " + e.what());
    }
  }

  std::ostringstream os;
  os << "gate,lambda,eta4,trace_p,fidelity,reference_trace_p,reference_fidelity,status,source\n";
  for (const auto& r : rows) {
    os << r.gate << "," << r.params << "," << trp_str(r.trace_p) << "," << fid_str(r.fidelity) << ","
       << trp_str(r.ref_trace_p) << "," << (std::isfinite(r.ref_fidelity) ? fmt("%.5f", r.ref_fidelity) : "n/a") << ","
       << r.status << "," << r.source << "\n";
  }
  out << os.str();
  if (!out_path.empty()) write_file(out_path, os.str());
  return ok;
}

namespace {

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::step_limit_exceeded:
    case ErrorCode::tolerance_unreachable:
    case ErrorCode::non_finite_cost:
    case ErrorCode::not_hermitian:
      return integrator_failure;
    default:
      return config_error;
  }
}

void add_sweep_flags(CLI::App* app, Options& o, std::string& config_path) {
  app->add_option("--config", config_path, "Flat JSON config file; flags override its entries");
  app->add_option("--gate", o.gate, "NOT, HADAMARD, MOD_PI8, MOD_PHASE or MOD_CPHASE");
  app->add_option("--preset", o.preset, "Published parameter set: one-qubit or two-qubit");
  app->add_option("--lambda", o.lambda, "Dimensionless lambda");
  app->add_option("--eta4", o.eta4, "Dimensionless twist strength eta4");
  app->add_option("--tau0", o.tau0, "Inversion time; the sweep covers [-tau0, tau0]");
  app->add_option("--c4", o.c4, "Two-qubit projector weight");
  app->add_option("--d1", o.d1);
  app->add_option("--d2", o.d2);
  app->add_option("--d3", o.d3);
  app->add_option("--d4", o.d4);
  app->add_option("--a", o.a, "Physical sweep rate (one-qubit)");
  app->add_option("--b", o.b, "Physical transverse field (one-qubit)");
  app->add_option("--B", o.B, "Physical twist scale (one-qubit)");
  app->add_option("--T0", o.T0, "Physical half-duration (one-qubit)");
  app->add_option("--hbar", o.hbar);
  app->add_option("--tolerance", o.tolerance, "Integrator relative tolerance (absolute = 1e-2 of it)");
  app->add_option("--out", o.out, "Output file");
  app->add_option("--format", o.format, "csv or json");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twisted rapid passage gate simulator and optimizer"};
  app.require_subcommand(1);

  Options opts;
  std::string config_path;
  std::string out_path;
  std::vector<std::string> records;
  bool no_trace = false;

  auto* sim = app.add_subcommand("simulate", "Propagate a sweep and score it against the target gate");
  add_sweep_flags(sim, opts, config_path);

  auto* scan = app.add_subcommand("scan", "Tr P at a parameter and one fourth-significant-figure unit either side");
  add_sweep_flags(scan, opts, config_path);
  scan->add_option("--parameter", opts.parameter, "lambda or eta4");

  auto* opt = app.add_subcommand("optimize", "Minimize the robust cost over the free sweep parameters");
  add_sweep_flags(opt, opts, config_path);
  opt->add_option("--r-weight", opts.r_weight, "Robustness penalty weight r (0 disables the penalty)");
  opt->add_option("--method", opts.method, "simplex or anneal");
  opt->add_option("--seed", opts.seed, "Annealing RNG seed");
  opt->add_option("--max-evals", opts.max_evals, "Cost evaluation budget");
  opt->add_flag("--no-trace", no_trace, "Omit the cost trace from the JSON record");

  auto* rep = app.add_subcommand("report", "Compare records against the published one-qubit results");
  rep->add_option("records", records, "Record files written by simulate or optimize");
  rep->add_option("--out", out_path, "Write the comparison table to this CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return config_error;
  }

  try {
    if (rep->parsed()) return cmd_report(records, out_path, out);

    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) config_fail("cannot read config file '" + config_path + "'");
      json j;
      try {
        j = json::parse(f);
      } catch (const json::exception& e) {
        config_fail("malformed config file '" + config_path + "': " + e.what());
      }
      merge_config(opts, j);
    }
    if (no_trace) opts.include_trace = false;

    if (sim->parsed()) return cmd_simulate(resolve("simulate", opts), out);
    if (scan->parsed()) return cmd_scan(resolve("scan", opts), out);
    return cmd_optimize(resolve("optimize", opts), out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace trp::cli
