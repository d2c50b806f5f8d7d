#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mdendro {

enum class ErrorCode {
  parse_error,
  asymmetric_input,
  missing_pair,
  duplicate_pair,
  negative_value,
  duplicate_label,
  out_of_range,
  missing_distance,
  invalid_alpha,
  unsupported_method,
  dimension_mismatch,
  empty_input,
  policy_unavailable,
  too_many_solutions,
  unresolved_heights,
  invalid_argument,
  io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this exception type. The C API
// maps the code onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mdendro
