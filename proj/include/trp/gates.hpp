#pragma once

// Target gates of the universal set and the Tr P / fidelity metrics.

#include <array>
#include <string>
#include <string_view>

#include "trp/linalg.hpp"

namespace trp {

enum class Gate { not_gate, hadamard, mod_pi8, mod_phase, mod_cphase };

inline constexpr std::array<Gate, 5> kAllGates{Gate::not_gate, Gate::hadamard, Gate::mod_pi8,
                                               Gate::mod_phase, Gate::mod_cphase};

// Stable identifiers: NOT, HADAMARD, MOD_PI8, MOD_PHASE, MOD_CPHASE.
std::string_view gate_id(Gate g) noexcept;

// Case-insensitive; also accepts "H", "PI8", "PHASE", "CPHASE".
// Throws Error(unknown_gate).
Gate parse_gate(std::string_view name);

int gate_qubits(Gate g) noexcept;

Mat2 target_matrix_1q(Gate g);  // throws Error(arity_mismatch) for MOD_CPHASE
Mat4 target_matrix_2q(Gate g);  // throws Error(arity_mismatch) for one-qubit gates

template <std::size_t N>
Matrix<N> target_matrix(Gate g) {
  static_assert(N == 2 || N == 4);
  if constexpr (N == 2) {
    return target_matrix_1q(g);
  } else {
    return target_matrix_2q(g);
  }
}

constexpr int qubits_of_dim(std::size_t n) { return n == 2 ? 1 : 2; }

// Tr[(Ua - Ut)^dagger (Ua - Ut)] = 2 d - 2 Re Tr(Ua^dagger Ut), clamped at zero.
// Phase sensitive: trace_p(e^{i t} U, U) = 4 d sin^2(t/2).
template <std::size_t N>
double trace_p(const Matrix<N>& u_applied, const Matrix<N>& u_target) {
  const double v = 2.0 * static_cast<double>(N) - 2.0 * trace_adjoint_product(u_applied, u_target).real();
  return v > 0.0 ? v : 0.0;
}

// (1/d) Re Tr(Ua^dagger Ut) written as 1 - Tr P / (2d), so the identity with
// trace_p holds by construction.
template <std::size_t N>
double fidelity(const Matrix<N>& u_applied, const Matrix<N>& u_target) {
  return 1.0 - trace_p(u_applied, u_target) / (2.0 * static_cast<double>(N));
}

// min over global phase of trace_p(e^{i t} Ua, Ut) = 2 d - 2 |Tr(Ua^dagger Ut)|.
// Diagnostic only.
template <std::size_t N>
double phase_optimized_trace_p(const Matrix<N>& u_applied, const Matrix<N>& u_target) {
  const double v = 2.0 * static_cast<double>(N) - 2.0 * std::abs(trace_adjoint_product(u_applied, u_target));
  return v > 0.0 ? v : 0.0;
}

struct GateScore {
  double trace_p = 0.0;
  double fidelity = 1.0;
  double error_bound = 0.0;  // upper bound on the worst-case error probability; equals trace_p
  double phase_optimized_trace_p = 0.0;
  int n_qubits = 1;
};

template <std::size_t N>
GateScore score(const Matrix<N>& u_applied, const Matrix<N>& u_target) {
  GateScore s;
  s.trace_p = trace_p(u_applied, u_target);
  s.fidelity = 1.0 - s.trace_p / (2.0 * static_cast<double>(N));
  s.error_bound = s.trace_p;
  s.phase_optimized_trace_p = phase_optimized_trace_p(u_applied, u_target);
  s.n_qubits = qubits_of_dim(N);
  return s;
}

}  // namespace trp
