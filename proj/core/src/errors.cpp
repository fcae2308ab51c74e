#include "schroeder_tails/errors.hpp"

namespace schroeder_tails {

const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::non_zero_p0: return "NonZeroP0";
    case errc::p1_out_of_range: return "P1OutOfRange";
    case errc::not_normalized: return "NotNormalized";
    case errc::periodic_support: return "PeriodicSupport";
    case errc::subcritical: return "Subcritical";
    case errc::non_positive_x: return "NonPositiveX";
    case errc::pole_argument: return "PoleArgument";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::no_convergence: return "NoConvergence";
    case errc::aliasing_suspected: return "AliasingSuspected";
    case errc::imag_residue_too_large: return "ImagResidueTooLarge";
    case errc::truncation_not_reached: return "TruncationNotReached";
    case errc::population_overflow: return "PopulationOverflow";
    case errc::grid_coverage: return "GridCoverage";
    case errc::negative_density: return "NegativeDensity";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

error_class errc_class(errc code) {
  switch (code) {
    case errc::invalid_argument:
    case errc::non_zero_p0:
    case errc::p1_out_of_range:
    case errc::not_normalized:
    case errc::periodic_support:
    case errc::subcritical:
    case errc::non_positive_x:
    case errc::pole_argument:
      return error_class::invalid_input;
    case errc::cap_exceeded:
    case errc::no_convergence:
    case errc::aliasing_suspected:
    case errc::imag_residue_too_large:
    case errc::truncation_not_reached:
    case errc::population_overflow:
    case errc::grid_coverage:
    case errc::negative_density:
      return error_class::numerical_guard;
    case errc::io_error:
      return error_class::io;
  }
  return error_class::numerical_guard;
}

int exit_status(error_class cls) {
  switch (cls) {
    case error_class::invalid_input: return 2;
    case error_class::numerical_guard: return 3;
    case error_class::io: return 4;
  }
  return 1;
}

}  // namespace schroeder_tails
