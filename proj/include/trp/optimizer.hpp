#pragma once

// Derivative-free minimizers (downhill simplex, simulated annealing) and the
// gate-level driver that minimizes the robust cost over sweep parameters.
//
// Both minimizers work in relative coordinates xi = x / x0 (components of x0
// equal to zero are left unscaled).

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "trp/gates.hpp"
#include "trp/model.hpp"
#include "trp/propagator.hpp"
#include "trp/robustness.hpp"

namespace trp {

struct SimplexConfig {
  double initial_spread = 1e-2;  // relative displacement of each initial vertex
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double tolerance = 1e-10;      // relative cost spread across the simplex
  double x_tolerance = 1e-10;    // simplex diameter in xi; guards against degenerate simplices
  std::size_t max_evals = 50'000;
  int restarts = 3;
};

struct AnnealConfig {
  double initial_temperature = 0.0;  // <= 0 selects 10 |f(x0)| (1 if f(x0) == 0)
  double cooling_factor = 0.95;
  int steps_per_temperature = 50;
  std::vector<double> proposal_scale;  // half-width of the uniform box in xi; empty means 1e-2 each
  double min_temperature = 0.0;        // <= 0 selects 1e-8 of the initial temperature
  std::uint64_t rng_seed = 1;
  std::size_t max_evals = 5'000;
};

void validate(const SimplexConfig& c);
void validate(const AnnealConfig& c);

struct TracePoint {
  std::size_t iteration = 0;
  double cost = 0.0;  // incumbent best after this iteration
};

struct OptimizationRecord {
  std::string method;
  std::vector<std::string> parameter_names;
  std::vector<double> start_x;
  double start_cost = 0.0;
  std::vector<double> best_x;
  double best_cost = 0.0;
  // Filled by optimize_gate from a fresh propagation at best_x; NaN otherwise.
  double best_trace_p = std::numeric_limits<double>::quiet_NaN();
  double best_fidelity = std::numeric_limits<double>::quiet_NaN();
  double hessian_l1 = std::numeric_limits<double>::quiet_NaN();
  double best_penalty = 0.0;
  double unitarity_defect = std::numeric_limits<double>::quiet_NaN();
  std::size_t evaluations = 0;
  bool budget_exhausted = false;
  std::vector<TracePoint> trace;

  bool improved() const { return best_cost < start_cost; }
};

// Nelder-Mead with restarts around the incumbent. Non-finite costs are treated
// as +inf. Throws Error(non_finite_cost) if f(x0) is not finite.
OptimizationRecord nelder_mead(const CostFunction& f, const std::vector<double>& x0, const SimplexConfig& cfg = {});

// Metropolis acceptance over uniform box proposals with geometric cooling;
// deterministic for a fixed seed.
OptimizationRecord simulated_annealing(const CostFunction& f, const std::vector<double>& x0, const AnnealConfig& cfg);

enum class Method { simplex, anneal };

std::string_view method_id(Method m) noexcept;
Method parse_method(std::string_view name);  // throws Error(invalid_config)

struct OptimizerSettings {
  Method method = Method::simplex;
  SimplexConfig simplex;
  AnnealConfig anneal;
  bool report_hessian = true;  // evaluate ||H||_1 of Tr P at the optimum
};

// One-qubit gates: free parameters (lambda, eta4), tau0 fixed.
// Throws Error(arity_mismatch) for a two-qubit gate.
OptimizationRecord optimize_gate(Gate g, const OneQubitSweep& x0, const CostModel& model,
                                 const OptimizerSettings& settings = {}, const IntegratorConfig& cfg = {});

// Two-qubit gate: free parameters (c4, d4), everything else fixed.
OptimizationRecord optimize_gate(Gate g, const TwoQubitSweep& x0, const CostModel& model,
                                 const OptimizerSettings& settings = {}, const IntegratorConfig& cfg = {});

}  // namespace trp
