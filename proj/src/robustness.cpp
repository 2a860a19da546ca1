#include "trp/robustness.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "trp/error.hpp"
#include "trp/simulation.hpp"

namespace trp {

namespace {

double checked(const CostFunction& f, const std::vector<double>& x, std::size_t& evals) {
  const double v = f(x);
  ++evals;
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "cost is not finite at (";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    throw Error(ErrorCode::non_finite_cost, os.str());
  }
  return v;
}

int decade(double x) {
  int e = static_cast<int>(std::floor(std::log10(std::abs(x))));
  // log10 can land one off near exact powers of ten.
  if (std::abs(x) < std::pow(10.0, e)) --e;
  if (std::abs(x) >= std::pow(10.0, e + 1)) ++e;
  return e;
}

}  // namespace

void validate(const CostModel& m) {
  if (!(m.r_weight >= 0.0) || !std::isfinite(m.r_weight)) {
    throw Error(ErrorCode::invalid_config, "r_weight must be finite and non-negative");
  }
  if (!(m.l1_threshold > 0.0)) throw Error(ErrorCode::invalid_config, "l1_threshold must be positive");
  if (m.step_significant_figure < 1 || m.step_significant_figure > 15) {
    throw Error(ErrorCode::invalid_config, "step_significant_figure must be in [1, 15]");
  }
}

double mantissa(double x) {
  if (x == 0.0 || !std::isfinite(x)) {
    throw Error(ErrorCode::zero_parameter, "parameter must be nonzero and finite for relative steps");
  }
  return std::abs(x) / std::pow(10.0, decade(x));
}

double relative_step(double xbar, int significant_figure) {
  return std::pow(10.0, 1 - significant_figure) / mantissa(xbar);
}

double significant_unit(double x, int significant_figure) {
  mantissa(x);  // validates
  return std::pow(10.0, decade(x) + 1 - significant_figure);
}

HessianReport hessian(const CostFunction& f, const std::vector<double>& xbar, const CostModel& model) {
  const std::size_t n = xbar.size();
  HessianReport rep;
  rep.at_point = xbar;
  rep.steps_used.resize(n);
  std::vector<double> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep.steps_used[i] = relative_step(xbar[i], model.step_significant_figure);
    m[i] = mantissa(xbar[i]);
  }
  rep.hbar_matrix.assign(n, std::vector<double>(n, 0.0));

  auto at = [&](std::size_t i, double si, std::size_t j, double sj) {
    std::vector<double> x = xbar;
    x[i] = xbar[i] * (1.0 + si * rep.steps_used[i]);
    if (j != i) x[j] = xbar[j] * (1.0 + sj * rep.steps_used[j]);
    return checked(f, x, rep.evaluations);
  };

  rep.center_cost = checked(f, xbar, rep.evaluations);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = rep.steps_used[i];
    rep.hbar_matrix[i][i] = (at(i, 1, i, 0) - 2.0 * rep.center_cost + at(i, -1, i, 0)) / (d * d);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) /
                       (4.0 * rep.steps_used[i] * rep.steps_used[j]);
      rep.hbar_matrix[i][j] = v;
      rep.hbar_matrix[j][i] = v;
    }
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rep.l1_norm += std::abs(rep.hbar_matrix[i][j]);
      sum += rep.hbar_matrix[i][j] / (m[i] * m[j]);
    }
  }
  rep.representative_cost = 5e-7 * sum;
  return rep;
}

double penalty(double l1, double threshold) {
  const double excess = l1 - threshold;
  return excess > 0.0 ? excess * excess : 0.0;
}

RobustCost robust_cost_breakdown(const CostFunction& base, const std::vector<double>& x, const CostModel& model) {
  validate(model);
  RobustCost out;
  if (model.r_weight == 0.0) {
    out.base = base(x);
    out.l1_norm = std::numeric_limits<double>::quiet_NaN();
    out.total = out.base;
    return out;
  }
  const HessianReport rep = hessian(base, x, model);
  out.base = rep.center_cost;
  out.l1_norm = rep.l1_norm;
  out.penalty = penalty(rep.l1_norm, model.l1_threshold);
  out.penalty_enabled = true;
  out.total = out.base + model.r_weight * out.penalty;
  return out;
}

double robust_cost(const CostFunction& base, const std::vector<double>& x, const CostModel& model) {
  return robust_cost_breakdown(base, x, model).total;
}

std::string_view parameter_id(ScanParameter p) noexcept {
  return p == ScanParameter::lambda ? "lambda" : "eta4";
}

ScanParameter parse_scan_parameter(std::string_view name) {
  if (name == "lambda") return ScanParameter::lambda;
  if (name == "eta4") return ScanParameter::eta4;
  throw Error(ErrorCode::invalid_config, "scan parameter must be lambda or eta4, got '" + std::string(name) + "'");
}

std::vector<ScanRow> sensitivity_scan(Gate g, const OneQubitSweep& s, ScanParameter which,
                                      const IntegratorConfig& cfg, std::optional<double> step,
                                      TwistSense sense) {
  validate(s);
  double OneQubitSweep::*field = which == ScanParameter::lambda ? &OneQubitSweep::lambda : &OneQubitSweep::eta4;
  const double center = s.*field;
  const double d = step ? *step : significant_unit(center, 4);

  std::vector<ScanRow> rows;
  for (double v : {center - d, center, center + d}) {
    OneQubitSweep p = s;
    p.*field = v;
    const GateRun<2> run = simulate_gate(g, p, cfg, sense);
    rows.push_back({std::string(parameter_id(which)), v, run.score.trace_p, run.score.fidelity});
  }
  return rows;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "parameter,value,trace_p,fidelity\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%.6g,%.2e,%.6f\n", r.parameter.c_str(), r.value, r.trace_p, r.fidelity);
    os << buf;
  }
}

}  // namespace trp
