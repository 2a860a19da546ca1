#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trp {

enum class ErrorCode {
  not_hermitian,
  non_positive_parameter,
  step_limit_exceeded,
  tolerance_unreachable,
  unknown_gate,
  dimension_mismatch,
  zero_parameter,
  non_finite_cost,
  arity_mismatch,
  invalid_config,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trp
