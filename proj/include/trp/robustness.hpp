#pragma once

// Hessian-based robustness penalty in relative coordinates xi_i = x_i / xbar_i.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trp/gates.hpp"
#include "trp/model.hpp"
#include "trp/propagator.hpp"

namespace trp {

using CostFunction = std::function<double(const std::vector<double>&)>;

struct CostModel {
  double r_weight = 0.0;
  double l1_threshold = 2500.0;
  // Stencil steps are one unit in this significant figure of each parameter.
  int step_significant_figure = 4;
};

void validate(const CostModel& m);

// |x| / 10^floor(log10 |x|), in [1, 10). Throws Error(zero_parameter) for 0 or non-finite x.
double mantissa(double x);

// 10^{1 - figure} / mantissa(xbar); 0.001 / mantissa for the fourth figure.
double relative_step(double xbar, int significant_figure = 4);

// Absolute size of one unit in the given significant figure of x (7.820 -> 0.001).
double significant_unit(double x, int significant_figure = 4);

struct HessianReport {
  std::vector<std::vector<double>> hbar_matrix;  // d^2 f / d xi_i d xi_j, symmetric
  double l1_norm = 0.0;                          // sum_ij |H_ij|
  std::vector<double> at_point;
  std::vector<double> steps_used;                // relative steps in xi
  double center_cost = 0.0;
  // 5e-7 sum_ij H_ij / (m_i m_j) with m the parameter mantissas; diagnostic only.
  double representative_cost = 0.0;
  std::size_t evaluations = 0;
};

// Central second differences in xi. Diagonal: (f+ - 2 f0 + f-) / d^2.
// Off-diagonal: four-point cross stencil (f++ - f+- - f-+ + f--) / (4 d_i d_j),
// evaluated once per pair and mirrored. Throws Error(non_finite_cost).
HessianReport hessian(const CostFunction& f, const std::vector<double>& xbar, const CostModel& model = {});

// max(l1 - threshold, 0)^2
double penalty(double l1, double threshold = 2500.0);

struct RobustCost {
  double base = 0.0;
  double l1_norm = 0.0;   // NaN when the Hessian was skipped (r = 0)
  double penalty = 0.0;
  double total = 0.0;
  bool penalty_enabled = false;
};

// base(x) + r penalty(||H(x)||_1). With r = 0 the Hessian is not evaluated and
// total == base(x) exactly.
RobustCost robust_cost_breakdown(const CostFunction& base, const std::vector<double>& x, const CostModel& model);
double robust_cost(const CostFunction& base, const std::vector<double>& x, const CostModel& model);

enum class ScanParameter { lambda, eta4 };

std::string_view parameter_id(ScanParameter p) noexcept;
ScanParameter parse_scan_parameter(std::string_view name);  // throws Error(invalid_config)

struct ScanRow {
  std::string parameter;
  double value = 0.0;
  double trace_p = 0.0;
  double fidelity = 0.0;
};

// Tr P at xbar - step, xbar, xbar + step for one parameter, others fixed.
// step defaults to one unit in the fourth significant figure of the parameter.
std::vector<ScanRow> sensitivity_scan(Gate g, const OneQubitSweep& s, ScanParameter which,
                                      const IntegratorConfig& cfg = {},
                                      std::optional<double> step = std::nullopt,
                                      TwistSense sense = TwistSense::resonant);

// Header parameter,value,trace_p,fidelity.
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

}  // namespace trp
