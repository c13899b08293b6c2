#pragma once

#include <stdexcept>
#include <string>

namespace arithinv {

enum class ErrorCode {
  non_field_ring,
  ring_mismatch,
  dimension_mismatch,
  not_invertible_over_ring,
  cap_exceeded,
  not_invariant,
  not_homogeneous,
  wrong_count,
  search_budget_exceeded,
  verification_failed,
  residue_field_too_small,
  unverified_hsop,
  modular_characteristic,
  flatness_violation,
  parse_error,
  invalid_argument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace arithinv
