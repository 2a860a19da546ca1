#pragma once

// Command-line front end: simulate | scan | optimize | report.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "trp/gates.hpp"
#include "trp/model.hpp"
#include "trp/optimizer.hpp"
#include "trp/propagator.hpp"
#include "trp/robustness.hpp"

namespace trp::cli {

enum ExitCode : int { ok = 0, config_error = 2, integrator_failure = 3, budget_exhausted = 4 };

// Raw user inputs from flags or a flat JSON config file; everything optional.
struct Options {
  std::optional<std::string> gate, preset, method, format, out, parameter;
  std::optional<double> lambda, eta4, tau0, c4, d1, d2, d3, d4;
  std::optional<double> a, b, B, T0, hbar;
  std::optional<double> r_weight, tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_evals;
  std::optional<bool> include_trace;
};

// Fills unset fields of `opts` from a flat JSON object. Unknown keys are a config error.
void merge_config(Options& opts, const nlohmann::json& j);

struct RunConfig {
  std::string command;
  Gate gate = Gate::hadamard;
  std::string preset;  // empty when parameters were given explicitly
  OneQubitSweep one;
  TwoQubitSweep two;
  std::optional<PhysicalSweep> physical;
  IntegratorConfig integrator;
  CostModel cost;
  OptimizerSettings optimizer;
  ScanParameter scan_parameter = ScanParameter::lambda;
  std::string format;
  std::string out;
  bool include_trace = true;

  bool two_qubit() const { return gate_qubits(gate) == 2; }
};

// Published parameter sets: "one-qubit" (per gate) and "two-qubit" (MOD_CPHASE).
OneQubitSweep preset_one_qubit(Gate g);
TwoQubitSweep preset_two_qubit();

// Published Tr P and F for one-qubit gates at the preset parameters.
struct Reference {
  double trace_p;
  double fidelity;
};
std::optional<Reference> published_reference(Gate g);

// Throws Error(invalid_config) and friends on inconsistent input.
RunConfig resolve(const std::string& command, const Options& opts);

nlohmann::json to_json(const RunConfig& cfg);
nlohmann::json to_json(const OptimizationRecord& rec, bool include_trace);

int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_scan(const RunConfig& cfg, std::ostream& out);
int cmd_optimize(const RunConfig& cfg, std::ostream& out);
int cmd_report(const std::vector<std::string>& paths, const std::string& out_path, std::ostream& out);

// Full entry point: parses argv, dispatches, maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trp::cli
