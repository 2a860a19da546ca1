#include "trp/error.hpp"

namespace trp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::not_hermitian: return "NotHermitian";
    case ErrorCode::non_positive_parameter: return "NonPositiveParameter";
    case ErrorCode::step_limit_exceeded: return "StepLimitExceeded";
    case ErrorCode::tolerance_unreachable: return "ToleranceUnreachable";
    case ErrorCode::unknown_gate: return "UnknownGate";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::zero_parameter: return "ZeroParameter";
    case ErrorCode::non_finite_cost: return "NonFiniteCost";
    case ErrorCode::arity_mismatch: return "ArityMismatch";
    case ErrorCode::invalid_config: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace trp
