#include "trp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "trp/error.hpp"
#include "trp/simulation.hpp"

namespace trp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BudgetStop {};

// Cost evaluation in xi coordinates with incumbent tracking.
class Evaluator {
 public:
  Evaluator(const CostFunction& f, const std::vector<double>& x0, std::size_t max_evals,
            OptimizationRecord& rec)
      : f_(f), max_evals_(max_evals), rec_(rec) {
    scale_.resize(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) scale_[i] = x0[i] != 0.0 ? x0[i] : 1.0;
  }

  std::vector<double> to_x(const std::vector<double>& xi) const {
    std::vector<double> x(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) x[i] = xi[i] * scale_[i];
    return x;
  }

  std::vector<double> to_xi(const std::vector<double>& x) const {
    std::vector<double> xi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xi[i] = x[i] / scale_[i];
    return xi;
  }

  double operator()(const std::vector<double>& xi) {
    if (rec_.evaluations >= max_evals_) throw BudgetStop{};
    const std::vector<double> x = to_x(xi);
    double v = f_(x);
    ++rec_.evaluations;
    if (!std::isfinite(v)) v = kInf;
    if (rec_.best_x.empty() || v < rec_.best_cost) {
      rec_.best_cost = v;
      rec_.best_x = x;
    }
    return v;
  }

  void mark(std::size_t iteration) { rec_.trace.push_back({iteration, rec_.best_cost}); }

 private:
  const CostFunction& f_;
  std::size_t max_evals_;
  OptimizationRecord& rec_;
  std::vector<double> scale_;
};

double start(Evaluator& eval, const std::vector<double>& xi0, OptimizationRecord& rec) {
  const double f0 = eval(xi0);
  if (!std::isfinite(f0)) throw Error(ErrorCode::non_finite_cost, "cost is not finite at the starting point");
  rec.start_cost = f0;
  eval.mark(0);
  return f0;
}

double diameter(const std::vector<std::vector<double>>& v) {
  double d = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k)
    for (std::size_t i = 0; i < v[0].size(); ++i) d = std::max(d, std::abs(v[k][i] - v[0][i]));
  return d;
}

// One simplex descent from a given vertex; returns when converged.
void simplex_run(Evaluator& eval, const SimplexConfig& c, const std::vector<double>& xi_c, double f_c,
                 std::size_t& iteration) {
  const std::size_t n = xi_c.size();
  std::vector<std::vector<double>> v(n + 1, xi_c);
  std::vector<double> fv(n + 1, f_c);
  for (std::size_t i = 0; i < n; ++i) {
    v[i + 1][i] += c.initial_spread * (xi_c[i] != 0.0 ? std::abs(xi_c[i]) : 1.0);
    fv[i + 1] = eval(v[i + 1]);
  }

  std::vector<std::size_t> order(n + 1);
  auto point = [n](const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = a[i] + t * (b[i] - a[i]);
    return p;
  };

  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> sv(n + 1);
    std::vector<double> sf(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      sv[k] = v[order[k]];
      sf[k] = fv[order[k]];
    }
    v.swap(sv);
    fv.swap(sf);

    const double lo = fv[0];
    const double hi = fv[n];
    if (2.0 * std::abs(hi - lo) <= c.tolerance * (std::abs(hi) + std::abs(lo)) + 1e-300) return;
    if (diameter(v) <= c.x_tolerance) return;

    ++iteration;
    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += v[k][i] / static_cast<double>(n);

    const std::vector<double> xr = point(centroid, v[n], -c.reflection);
    const double fr = eval(xr);
    if (fr < fv[0]) {
      const std::vector<double> xe = point(centroid, xr, c.expansion);
      const double fe = eval(xe);
      if (fe < fr) {
        v[n] = xe;
        fv[n] = fe;
      } else {
        v[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      v[n] = xr;
      fv[n] = fr;
    } else {
      const bool outside = fr < fv[n];
      const std::vector<double> xc = outside ? point(centroid, xr, c.contraction) : point(centroid, v[n], c.contraction);
      const double fc = eval(xc);
      if (outside ? fc <= fr : fc < fv[n]) {
        v[n] = xc;
        fv[n] = fc;
      } else {
        for (std::size_t k = 1; k <= n; ++k) {
          v[k] = point(v[0], v[k], c.shrink);
          fv[k] = eval(v[k]);
        }
      }
    }
    eval.mark(iteration);
  }
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_config, what);
}

}  // namespace

void validate(const SimplexConfig& c) {
  require(c.initial_spread > 0.0, "simplex initial_spread must be positive");
  require(c.reflection > 0.0 && c.expansion > 1.0, "simplex reflection must be positive and expansion above 1");
  require(c.contraction > 0.0 && c.contraction < 1.0, "simplex contraction must lie in (0, 1)");
  require(c.shrink > 0.0 && c.shrink < 1.0, "simplex shrink must lie in (0, 1)");
  require(c.tolerance >= 0.0 && c.x_tolerance >= 0.0, "simplex tolerances must be non-negative");
  require(c.max_evals > 0, "simplex max_evals must be positive");
  require(c.restarts >= 0, "simplex restarts must be non-negative");
}

void validate(const AnnealConfig& c) {
  require(c.cooling_factor > 0.0 && c.cooling_factor < 1.0, "cooling_factor must lie strictly inside (0, 1)");
  require(c.steps_per_temperature > 0, "steps_per_temperature must be positive");
  require(c.max_evals > 0, "anneal max_evals must be positive");
  for (double s : c.proposal_scale) require(s > 0.0, "proposal_scale entries must be positive");
}

OptimizationRecord nelder_mead(const CostFunction& f, const std::vector<double>& x0, const SimplexConfig& cfg) {
  validate(cfg);
  OptimizationRecord rec;
  rec.method = "simplex";
  rec.start_x = x0;
  Evaluator eval(f, x0, cfg.max_evals, rec);
  std::size_t iteration = 0;
  try {
    const double f0 = start(eval, eval.to_xi(x0), rec);
    simplex_run(eval, cfg, eval.to_xi(x0), f0, iteration);
    for (int r = 0; r < cfg.restarts; ++r) {
      const double before = rec.best_cost;
      simplex_run(eval, cfg, eval.to_xi(rec.best_x), rec.best_cost, iteration);
      if (!(before - rec.best_cost > cfg.tolerance * std::abs(before))) break;
    }
  } catch (const BudgetStop&) {
    rec.budget_exhausted = true;
  }
  eval.mark(iteration);
  return rec;
}

OptimizationRecord simulated_annealing(const CostFunction& f, const std::vector<double>& x0, const AnnealConfig& cfg) {
  validate(cfg);
  if (!cfg.proposal_scale.empty() && cfg.proposal_scale.size() != x0.size()) {
    throw Error(ErrorCode::invalid_config, "proposal_scale must have one entry per parameter");
  }
  OptimizationRecord rec;
  rec.method = "anneal";
  rec.start_x = x0;
  Evaluator eval(f, x0, cfg.max_evals, rec);
  std::mt19937_64 rng(cfg.rng_seed);

  std::vector<double> xi = eval.to_xi(x0);
  std::vector<double> scale = cfg.proposal_scale;
  if (scale.empty()) scale.assign(x0.size(), 1e-2);

  std::size_t iteration = 0;
  try {
    double current = start(eval, xi, rec);
    double temperature = cfg.initial_temperature > 0.0 ? cfg.initial_temperature
                         : current != 0.0              ? 10.0 * std::abs(current)
                                                       : 1.0;
    const double floor_t = cfg.min_temperature > 0.0 ? cfg.min_temperature : 1e-8 * temperature;
    while (temperature > floor_t) {
      for (int k = 0; k < cfg.steps_per_temperature; ++k) {
        std::vector<double> trial = xi;
        for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += scale[i] * (2.0 * uniform01(rng) - 1.0);
        const double ft = eval(trial);
        const double delta = ft - current;
        const double u = uniform01(rng);
        if (delta <= 0.0 || u < std::exp(-delta / temperature)) {
          xi = trial;
          current = ft;
        }
        eval.mark(++iteration);
      }
      temperature *= cfg.cooling_factor;
    }
  } catch (const BudgetStop&) {
    rec.budget_exhausted = true;
  }
  return rec;
}

std::string_view method_id(Method m) noexcept { return m == Method::simplex ? "simplex" : "anneal"; }

Method parse_method(std::string_view name) {
  if (name == "simplex") return Method::simplex;
  if (name == "anneal") return Method::anneal;
  throw Error(ErrorCode::invalid_config, "method must be simplex or anneal, got '" + std::string(name) + "'");
}

namespace {

// Search cost: domain violations and non-finite stencil points count as +inf.
CostFunction search_cost(const CostFunction& base, const CostModel& model, bool (*in_domain)(const std::vector<double>&)) {
  return [&base, model, in_domain](const std::vector<double>& x) {
    if (!in_domain(x)) return kInf;
    try {
      return robust_cost(base, x, model);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::non_finite_cost || e.code() == ErrorCode::zero_parameter) return kInf;
      throw;
    }
  };
}

template <class Simulate>
OptimizationRecord drive(const CostFunction& base, const std::vector<double>& x0, const CostModel& model,
                         const OptimizerSettings& settings, bool (*in_domain)(const std::vector<double>&),
                         Simulate&& simulate) {
  validate(model);
  const CostFunction cost = search_cost(base, model, in_domain);
  OptimizationRecord rec = settings.method == Method::simplex ? nelder_mead(cost, x0, settings.simplex)
                                                              : simulated_annealing(cost, x0, settings.anneal);
  const auto run = simulate(rec.best_x);
  rec.best_trace_p = run.score.trace_p;
  rec.best_fidelity = run.score.fidelity;
  rec.unitarity_defect = run.propagation.max_unitarity_defect;
  if (settings.report_hessian) {
    try {
      rec.hessian_l1 = hessian(base, rec.best_x, model).l1_norm;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::non_finite_cost && e.code() != ErrorCode::zero_parameter) throw;
    }
  }
  if (model.r_weight > 0.0 && std::isfinite(rec.hessian_l1)) {
    rec.best_penalty = penalty(rec.hessian_l1, model.l1_threshold);
  }
  return rec;
}

bool one_qubit_domain(const std::vector<double>& x) {
  return x.size() == 2 && x[0] > 0.0 && x[1] > 0.0 && std::isfinite(x[0]) && std::isfinite(x[1]);
}

bool two_qubit_domain(const std::vector<double>& x) {
  return x.size() == 2 && std::isfinite(x[0]) && std::isfinite(x[1]);
}

}  // namespace

OptimizationRecord optimize_gate(Gate g, const OneQubitSweep& x0, const CostModel& model,
                                 const OptimizerSettings& settings, const IntegratorConfig& cfg) {
  if (gate_qubits(g) != 1) {
    throw Error(ErrorCode::arity_mismatch, std::string(gate_id(g)) + " needs a two-qubit sweep");
  }
  validate(x0);
  auto sweep_at = [x0](const std::vector<double>& x) {
    OneQubitSweep s = x0;
    s.lambda = x[0];
    s.eta4 = x[1];
    return s;
  };
  const CostFunction base = [&](const std::vector<double>& x) {
    if (!one_qubit_domain(x)) return kInf;
    return simulate_gate(g, sweep_at(x), cfg).score.trace_p;
  };
  OptimizationRecord rec = drive(base, {x0.lambda, x0.eta4}, model, settings, one_qubit_domain,
                                                [&](const std::vector<double>& x) { return simulate_gate(g, sweep_at(x), cfg); });
  rec.parameter_names = {"lambda", "eta4"};
  return rec;
}

OptimizationRecord optimize_gate(Gate g, const TwoQubitSweep& x0, const CostModel& model,
                                 const OptimizerSettings& settings, const IntegratorConfig& cfg) {
  if (gate_qubits(g) != 2) {
    throw Error(ErrorCode::arity_mismatch, std::string(gate_id(g)) + " needs a one-qubit sweep");
  }
  validate(x0);
  auto sweep_at = [x0](const std::vector<double>& x) {
    TwoQubitSweep s = x0;
    s.c4 = x[0];
    s.d4 = x[1];
    return s;
  };
  const CostFunction base = [&](const std::vector<double>& x) {
    if (!two_qubit_domain(x)) return kInf;
    return simulate_gate(g, sweep_at(x), cfg).score.trace_p;
  };
  OptimizationRecord rec = drive(base, {x0.c4, x0.d4}, model, settings, two_qubit_domain,
                                                [&](const std::vector<double>& x) { return simulate_gate(g, sweep_at(x), cfg); });
  rec.parameter_names = {"c4", "d4"};
  return rec;
}

}  // namespace trp
