#include "trp/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "trp/error.hpp"

namespace trp {

std::string_view gate_id(Gate g) noexcept {
  switch (g) {
    case Gate::not_gate: return "NOT";
    case Gate::hadamard: return "HADAMARD";
    case Gate::mod_pi8: return "MOD_PI8";
    case Gate::mod_phase: return "MOD_PHASE";
    case Gate::mod_cphase: return "MOD_CPHASE";
  }
  return "UNKNOWN";
}

Gate parse_gate(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) {
    return c == '-' ? '_' : static_cast<char>(std::toupper(c));
  });
  if (up == "NOT" || up == "X") return Gate::not_gate;
  if (up == "HADAMARD" || up == "H") return Gate::hadamard;
  if (up == "MOD_PI8" || up == "PI8") return Gate::mod_pi8;
  if (up == "MOD_PHASE" || up == "PHASE") return Gate::mod_phase;
  if (up == "MOD_CPHASE" || up == "CPHASE") return Gate::mod_cphase;
  throw Error(ErrorCode::unknown_gate, "unknown gate '" + std::string(name) + "'");
}

int gate_qubits(Gate g) noexcept { return g == Gate::mod_cphase ? 2 : 1; }

Mat2 target_matrix_1q(Gate g) {
  using namespace pauli;
  const double r = 1.0 / std::numbers::sqrt2;
  switch (g) {
    case Gate::not_gate: return X;
    case Gate::hadamard: return r * (Z + X);
    case Gate::mod_pi8: return std::cos(std::numbers::pi / 8) * X - std::sin(std::numbers::pi / 8) * Y;
    case Gate::mod_phase: return r * (X - Y);
    case Gate::mod_cphase: break;
  }
  throw Error(ErrorCode::arity_mismatch, std::string(gate_id(g)) + " is not a one-qubit gate");
}

Mat4 target_matrix_2q(Gate g) {
  if (g != Gate::mod_cphase) {
    throw Error(ErrorCode::arity_mismatch, std::string(gate_id(g)) + " is not a two-qubit gate");
  }
  using namespace pauli;
  // (1/2)[(I + Z1) I2 - (I - Z1) Z2]
  return 0.5 * (kron(I + Z, I) - kron(I - Z, Z));
}

}  // namespace trp
