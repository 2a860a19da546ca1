// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trp/gates.hpp"
#include "trp/model.hpp"
#include "trp/optimizer.hpp"
#include "trp/propagator.hpp"
#include "trp/robustness.hpp"
#include "trp/simulation.hpp"

using namespace trp;

namespace {

// Tolerances and bands.
constexpr double kTracePBand = 3.0;          // factor around the published Tr P
constexpr double kFidelityBand = 5e-4;       // absolute
constexpr double kGateSeconds = 5.0;
constexpr double kLambdaRatio = 5.0;
constexpr double kEtaRatio = 50.0;
constexpr double kIdentityTol = 1e-12;
constexpr double kHessianRelTol = 1e-6;
constexpr double kRosenbrockTol = 1e-5;
constexpr std::size_t kRosenbrockEvals = 2000;
constexpr double kRobustTracePMax = 5e-4;
// Penalty weight for the robust rerun. ||H||_1 of Tr P sits near 1e5-1e6 at
// every good one-qubit point, so r (||H||_1 - 2500)^2 is of order 1e-4 here:
// active, but not large enough to swamp Tr P.
constexpr double kRobustWeight = 1e-16;
constexpr double kDefectMax = 1e-8;
constexpr double kPauliLimitTol = 1e-12;
constexpr double kResonanceTol = 1e-10;

struct Published {
  Gate gate;
  double lambda, eta4, trace_p, fidelity;
};

const Published kPublished[] = {
    {Gate::not_gate, 6.965, 2.189e-4, 6.27e-5, 0.99998},
    {Gate::hadamard, 7.820, 1.792e-4, 1.12e-4, 0.99997},
    {Gate::mod_pi8, 8.465, 1.675e-4, 2.13e-4, 0.99995},
    {Gate::mod_phase, 8.073, 1.666e-4, 4.62e-4, 0.99988},
};
constexpr double kTau0 = 80.000;

const TwoQubitSweep kTwoQubit{5.04, 3.0e-4, 120.00, 2.173, 99.3, 0.0, -0.41, 0.8347};

int failures = 0;

void report(int id, const char* title, bool pass, std::string detail) {
  while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
  std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string sci(double v, int digits = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <std::size_t N>
Matrix<N> random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix<N> m;
  for (auto& z : m.a) z = complex(g(rng), g(rng));
  for (std::size_t c = 0; c < N; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      complex dot = 0.0;
      for (std::size_t i = 0; i < N; ++i) dot += std::conj(m(i, p)) * m(i, c);
      for (std::size_t i = 0; i < N; ++i) m(i, c) -= dot * m(i, p);
    }
    double n = 0.0;
    for (std::size_t i = 0; i < N; ++i) n += std::norm(m(i, c));
    for (std::size_t i = 0; i < N; ++i) m(i, c) /= std::sqrt(n);
  }
  return m;
}

void gate_reproduction() {
  bool pass = true;
  std::ostringstream os;
  for (const auto& p : kPublished) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto run = simulate_gate(p.gate, OneQubitSweep{p.lambda, p.eta4, kTau0});
    const double dt = seconds_since(t0);
    const double ratio = run.score.trace_p / p.trace_p;
    const bool ok = ratio <= kTracePBand && ratio >= 1.0 / kTracePBand &&
                    std::abs(run.score.fidelity - p.fidelity) <= kFidelityBand && dt < kGateSeconds;
    pass = pass && ok;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s Tr P %s (ref %s, x%.2f) F %.6f (ref %.5f) %.2fs; ", std::string(gate_id(p.gate)).c_str(),
                  sci(run.score.trace_p).c_str(), sci(p.trace_p).c_str(), ratio, run.score.fidelity, p.fidelity, dt);
    os << buf;
  }
  report(1, "one-qubit gates at published parameters", pass, os.str());
}

void sensitivity_pattern() {
  const OneQubitSweep h{7.820, 1.792e-4, kTau0};
  const auto lam = sensitivity_scan(Gate::hadamard, h, ScanParameter::lambda, {}, 0.001);
  const auto eta = sensitivity_scan(Gate::hadamard, h, ScanParameter::eta4, {}, 1e-7);
  const double l0 = lam[0].trace_p / lam[1].trace_p, l2 = lam[2].trace_p / lam[1].trace_p;
  const double e0 = eta[0].trace_p / eta[1].trace_p, e2 = eta[2].trace_p / eta[1].trace_p;
  const bool pass = l0 >= kLambdaRatio && l2 >= kLambdaRatio && e0 >= kEtaRatio && e2 >= kEtaRatio;
  char buf[300];
  std::snprintf(buf, sizeof buf,
                "Hadamard lambda -/+0.001: x%.1f, x%.1f (need >= %.0f); eta4 -/+1e-7: x%.0f, x%.0f (need >= %.0f)", l0, l2,
                kLambdaRatio, e0, e2, kEtaRatio);
  report(2, "sensitivity to fourth-significant-figure changes", pass, buf);
}

void metric_identity() {
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Mat2 a = random_unitary<2>(rng), b = random_unitary<2>(rng);
    const double f1 = trace_adjoint_product(a, b).real() / 2.0;
    worst = std::max({worst, std::abs(fidelity(a, b) - (1.0 - trace_p(a, b) / 4.0)), std::abs(fidelity(a, b) - f1)});
    const Mat4 c = random_unitary<4>(rng), d = random_unitary<4>(rng);
    const double f2 = trace_adjoint_product(c, d).real() / 4.0;
    worst = std::max({worst, std::abs(fidelity(c, d) - (1.0 - trace_p(c, d) / 8.0)), std::abs(fidelity(c, d) - f2)});
  }
  report(3, "fidelity / Tr P identity on 1000 random pairs per qubit count", worst <= kIdentityTol,
         "max deviation " + sci(worst) + " (limit " + sci(kIdentityTol, 0) + ")");
}

void hessian_checks() {
  struct Case {
    const char* name;
    std::vector<double> xbar;
    std::function<double(const std::vector<double>&)> f_xi;  // in xi = x / xbar
    std::vector<std::vector<double>> exact;
  };
  const std::vector<Case> cases = {
      {"sum of squares plus cross", {1.0, 1.0},
       [](const std::vector<double>& s) { return s[0] * s[0] + s[1] * s[1] + s[0] * s[1]; }, {{2, 1}, {1, 2}}},
      {"scaled quadratic", {5.0, 2e-4},
       [](const std::vector<double>& s) { return 3 * s[0] * s[0] - 2 * s[0] * s[1] + 5 * s[1] * s[1]; }, {{6, -2}, {-2, 10}}},
      {"quartic", {7.82, 1.792e-4},
       [](const std::vector<double>& s) { return std::pow(s[0], 4) + std::pow(s[1], 4) + s[0] * s[0] * s[1] * s[1]; },
       {{14, 4}, {4, 14}}},
      {"three-parameter quadratic", {2.5, -3e3, 0.07},
       [](const std::vector<double>& s) {
         const double a[3][3] = {{4, 1, -1}, {1, 3, 2}, {-1, 2, 5}};
         double v = 0.0;
         for (int i = 0; i < 3; ++i)
           for (int j = 0; j < 3; ++j) v += 0.5 * s[i] * a[i][j] * s[j];
         return v;
       },
       {{4, 1, -1}, {1, 3, 2}, {-1, 2, 5}}},
      {"product quartic", {3.0, 0.5},
       [](const std::vector<double>& s) { return 2.25 * s[0] * s[0] * s[1] * s[1]; }, {{4.5, 9}, {9, 4.5}}},
  };

  double worst = 0.0;
  for (const auto& c : cases) {
    const CostFunction f = [&c](const std::vector<double>& x) {
      std::vector<double> xi(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) xi[i] = x[i] / c.xbar[i];
      return c.f_xi(xi);
    };
    const auto h = hessian(f, c.xbar);
    for (std::size_t i = 0; i < c.xbar.size(); ++i)
      for (std::size_t j = 0; j < c.xbar.size(); ++j)
        worst = std::max(worst, std::abs(h.hbar_matrix[i][j] - c.exact[i][j]) / std::abs(c.exact[i][j]));
  }
  const double p0 = penalty(2500.0, 2500.0), p1 = penalty(2600.0, 2500.0);
  const bool pass = worst <= kHessianRelTol && p0 == 0.0 && p1 == 1.0e4;
  report(4, "finite-difference Hessian and penalty", pass,
         "worst relative error " + sci(worst) + " over 5 functions (limit " + sci(kHessianRelTol, 0) + "); penalty(2500) = " +
             sci(p0, 1) + ", penalty(2600) = " + sci(p1, 1));
}

void optimizer_sanity() {
  const CostFunction rosen = [](const std::vector<double>& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const auto nm = nelder_mead(rosen, {-1.2, 1.0});
  const double dist = std::max(std::abs(nm.best_x[0] - 1.0), std::abs(nm.best_x[1] - 1.0));
  const bool nm_ok = dist <= kRosenbrockTol && nm.evaluations <= kRosenbrockEvals;

  AnnealConfig cfg;
  cfg.rng_seed = 777;
  cfg.max_evals = 3000;
  const auto a = simulated_annealing(rosen, {-1.2, 1.0}, cfg);
  const auto b = simulated_annealing(rosen, {-1.2, 1.0}, cfg);
  bool same = a.trace.size() == b.trace.size() && a.best_x == b.best_x && a.evaluations == b.evaluations;
  for (std::size_t i = 0; same && i < a.trace.size(); ++i) same = a.trace[i].cost == b.trace[i].cost;
  bool monotone = true;
  for (std::size_t i = 1; i < a.trace.size(); ++i) monotone = monotone && a.trace[i].cost <= a.trace[i - 1].cost;

  char buf[300];
  std::snprintf(buf, sizeof buf,
                "simplex reached (%.7f, %.7f) in %zu evaluations; annealing seed %llu: %zu trace points, reproducible=%s, "
                "incumbent monotone=%s",
                nm.best_x[0], nm.best_x[1], nm.evaluations, static_cast<unsigned long long>(cfg.rng_seed), a.trace.size(),
                same ? "yes" : "no", monotone ? "yes" : "no");
  report(5, "optimizer sanity", nm_ok && same && monotone, buf);
}

void robust_reoptimization() {
  bool pass = true;
  std::ostringstream os;
  for (const auto& p : kPublished) {
    // One unit up in the third significant figure of both free parameters.
    const OneQubitSweep start{p.lambda + significant_unit(p.lambda, 3), p.eta4 + significant_unit(p.eta4, 3), kTau0};

    CostModel robust;
    robust.r_weight = kRobustWeight;
    const auto t0 = std::chrono::steady_clock::now();
    const auto rec = optimize_gate(p.gate, start, robust);
    const double dt = seconds_since(t0);

    const auto plain = optimize_gate(p.gate, start, CostModel{});
    const bool ok = rec.best_trace_p <= kRobustTracePMax && std::isfinite(rec.hessian_l1) &&
                    rec.best_cost > rec.best_trace_p &&  // penalty contributed
                    plain.best_cost == plain.best_trace_p;
    pass = pass && ok;
    char buf[260];
    std::snprintf(buf, sizeof buf, "%s from (%.3f, %.3e): Tr P %s, ||H||_1 %.3g, r*P %s, %.0fs; r=0 cost-TrP %s; ",
                  std::string(gate_id(p.gate)).c_str(), start.lambda, start.eta4, sci(rec.best_trace_p).c_str(),
                  rec.hessian_l1, sci(rec.best_cost - rec.best_trace_p).c_str(), dt,
                  sci(plain.best_cost - plain.best_trace_p, 1).c_str());
    os << buf;
  }
  report(6, "robust reoptimization from perturbed starts (r = 1e-16)", pass, os.str());
}

void two_qubit_dynamics() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto run = simulate_gate(Gate::mod_cphase, kTwoQubit);
  const double dt = seconds_since(t0);
  const bool defect_ok = run.propagation.max_unitarity_defect < kDefectMax;

  bool hermitian = true;
  for (int k = 0; k < 100; ++k) {
    const double tau = -kTwoQubit.tau0 + 2.0 * kTwoQubit.tau0 * k / 99.0;
    hermitian = hermitian && is_hermitian(hamiltonian_2q(tau, kTwoQubit), 0.0);
  }

  // Five Pauli-term sum assembled directly.
  const auto explicit_sum = [](double tau, const TwoQubitSweep& s) {
    const double phi = s.eta4 / (2.0 * s.lambda) * std::pow(tau, 4);
    const Mat2 t1 = (-s.d3 / s.lambda) * (std::cos(phi) * pauli::X + std::sin(phi) * pauli::Y);
    const Mat2 t2 = (-1.0 / s.lambda) * (std::cos(phi) * pauli::X + std::sin(phi) * pauli::Y);
    return kron((-(s.d1 + s.d2) / 2.0 + tau / s.lambda) * pauli::Z, pauli::I) + kron(t1, pauli::I) +
           kron(pauli::I, (-s.d2 / 2.0 + tau / s.lambda) * pauli::Z) + kron(pauli::I, t2) +
           (-std::numbers::pi * s.d4 / 2.0) * kron(pauli::Z, pauli::Z);
  };
  double limit = 0.0;
  for (double c4 : {0.0, 1e-14}) {
    TwoQubitSweep s = kTwoQubit;
    s.c4 = c4;
    for (int k = 0; k < 100; ++k) {
      const double tau = -kTwoQubit.tau0 + 2.0 * kTwoQubit.tau0 * k / 99.0;
      limit = std::max(limit, max_abs_diff(hamiltonian_2q(tau, s), explicit_sum(tau, s)));
    }
  }
  const bool pass = defect_ok && hermitian && limit <= kPauliLimitTol;
  char buf[300];
  std::snprintf(buf, sizeof buf,
                "defect %s over %zu steps (limit %s, %.1fs; Tr P %s, not compared: symmetrized evolution not modelled); "
                "Hermitian at 100 tau: %s; c4 -> 0 deviation %s",
                sci(run.propagation.max_unitarity_defect).c_str(), run.propagation.steps_taken, sci(kDefectMax, 0).c_str(), dt,
                sci(run.score.trace_p).c_str(), hermitian ? "yes" : "no", sci(limit).c_str());
  report(7, "two-qubit dynamics", pass, buf);
}

void resonance_structure() {
  // Resonance: tau / lambda equals half the twist rate, (1/2) d phi4/d tau = eta4 tau^3 / lambda.
  auto numeric_roots = [](double eta4) {
    const double lambda = 7.82;
    auto g = [&](double t) { return t / lambda - eta4 * t * t * t / lambda; };
    const double span = 1.7 / std::sqrt(eta4);
    std::vector<double> out;
    const int n = 1001;
    for (int i = 0; i + 1 < n; ++i) {
      const double a = -span + 2.0 * span * i / (n - 1);
      const double b = -span + 2.0 * span * (i + 1) / (n - 1);
      if (g(a) == 0.0) {
        out.push_back(a);
        continue;
      }
      if ((g(a) < 0.0) == (g(b) < 0.0) || g(b) == 0.0) continue;
      double lo = a, hi = b;
      while (hi - lo > 1e-15 * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        ((g(lo) < 0.0) == (g(mid) < 0.0) ? lo : hi) = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    return out;
  };

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> expo(-6.0, 0.0);
  double worst = 0.0;
  bool shape = true;
  for (int k = 0; k < 20; ++k) {
    const double eta4 = std::pow(10.0, expo(rng));
    const auto got = resonance_times(eta4);
    const auto want = numeric_roots(eta4);
    shape = shape && got.size() == 3 && want.size() == 3 && got[1] == 0.0;
    for (std::size_t i = 0; shape && i < 3; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
  }
  report(8, "resonance times", shape && worst <= kResonanceTol,
         "20 random eta4 in [1e-6, 1]: three roots each, max deviation from bisection " + sci(worst) + " (limit " +
             sci(kResonanceTol, 0) + ")");
}

}  // namespace

int main() {
  gate_reproduction();
  sensitivity_pattern();
  metric_identity();
  hessian_checks();
  optimizer_sanity();
  robust_reoptimization();
  two_qubit_dynamics();
  resonance_structure();
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
