#pragma once

#include <stdexcept>
#include <string>

namespace schroeder_tails {

/// Failure codes carried by every library exception. The CLI maps the
/// class of a code to its exit status: invalid input -> 2, numerical
/// guard tripped -> 3, i/o failure -> 4.
enum class errc {
  invalid_argument,
  non_zero_p0,
  p1_out_of_range,
  not_normalized,
  periodic_support,
  subcritical,
  non_positive_x,
  pole_argument,
  cap_exceeded,
  no_convergence,
  aliasing_suspected,
  imag_residue_too_large,
  truncation_not_reached,
  population_overflow,
  grid_coverage,
  negative_density,
  io_error,
};

enum class error_class { invalid_input, numerical_guard, io };

const char* errc_name(errc code);
error_class errc_class(errc code);
int exit_status(error_class cls);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }
  error_class cls() const noexcept { return errc_class(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace schroeder_tails
