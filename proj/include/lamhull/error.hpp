#pragma once

#include <stdexcept>
#include <string>

namespace lamhull {

// Failure classes raised by the library. Each maps 1:1 onto a C API status.
enum class Errc {
  invalid_argument,
  non_positive,
  trace_mismatch,
  not_positive_definite,
  not_distinct,
  degenerate_denominator,
  degenerate_lambda,
  degenerate_xi1,
  not_admissible,
  empty_admissible_set,
  reconstruction_mismatch,
  no_real_roots,
  bracket_violation,
  optimality_violation,
  ordering_violation,
  stitch_failure,
  mismatch_with_admissible_set,
  extremality_violation,
  strictness_violation,
  unsupported,
  io_error,
  config_error,
};

const char* errc_name(Errc) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace lamhull
