#pragma once

// Time-ordered propagation of i dU/dtau = H(tau) U.

#include <cstddef>
#include <functional>

#include "trp/linalg.hpp"
#include "trp/model.hpp"

namespace trp {

struct IntegratorConfig {
  double rel_tolerance = 1e-10;
  double abs_tolerance = 1e-12;
  double initial_step = 0.0;  // <= 0 selects span / 1e4
  std::size_t max_steps = 10'000'000;
};

// Throws Error(invalid_config) on non-positive tolerances or step budget.
void validate(const IntegratorConfig& cfg);

template <std::size_t N>
struct PropagationResult {
  Matrix<N> u_applied = Matrix<N>::identity();
  std::size_t steps_taken = 0;
  std::size_t steps_rejected = 0;
  double max_unitarity_defect = 0.0;  // over all accepted steps, never corrected
  double tolerance_used = 0.0;
};

template <std::size_t N>
using Hamiltonian = std::function<Matrix<N>(double)>;

// Evolves U(span.begin) = I to U(span.end) with an embedded 8(5,3)
// Runge-Kutta pair (Dormand-Prince) under proportional-integral step control.
// Throws Error(step_limit_exceeded) or Error(tolerance_unreachable).
template <std::size_t N>
PropagationResult<N> propagate(const Hamiltonian<N>& h, Interval span, const IntegratorConfig& cfg = {});

// Shorthand for the symmetric sweep window [-tau0, tau0].
template <std::size_t N>
PropagationResult<N> propagate(const Hamiltonian<N>& h, double tau0, const IntegratorConfig& cfg = {}) {
  return propagate<N>(h, sweep_interval(tau0), cfg);
}

template <std::size_t N>
Vector<N> propagate_state(const Hamiltonian<N>& h, const Vector<N>& psi0, Interval span,
                          const IntegratorConfig& cfg = {});

extern template PropagationResult<2> propagate<2>(const Hamiltonian<2>&, Interval, const IntegratorConfig&);
extern template PropagationResult<4> propagate<4>(const Hamiltonian<4>&, Interval, const IntegratorConfig&);
extern template Vector<2> propagate_state<2>(const Hamiltonian<2>&, const Vector<2>&, Interval,
                                             const IntegratorConfig&);
extern template Vector<4> propagate_state<4>(const Hamiltonian<4>&, const Vector<4>&, Interval,
                                             const IntegratorConfig&);

}  // namespace trp
