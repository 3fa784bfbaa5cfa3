#pragma once

#include <stdexcept>
#include <string>

namespace trivec {

enum class Errc {
  invalid_input,
  not_skew,
  odd_size,
  unsupported_field,
  singular,
  not_invertible,
  budget_exceeded,
  kernel_dim_not_one,
  weil_violation,
  singular_curve,
  certificate_failure,
  degenerate_configuration,
  not_char_three,
  no_solution,
  no_cube_root,
  field_mismatch,
  disagreement,
  non_stable_input,
};

const char* errc_name(Errc e) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace trivec
