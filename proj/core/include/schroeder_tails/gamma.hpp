#pragma once

#include <complex>

namespace schroeder_tails {

/// Gamma(z) via the Stirling series with recurrence shift (|z| raised to 12
/// before summing) and reflection for Re z < 1/2. Relative error is well
/// under 1e-12 for Re z in [-1/2, 50], |Im z| <= 200. Throws PoleArgument at
/// nonpositive integers.
std::complex<double> complex_gamma(std::complex<double> z);

}  // namespace schroeder_tails
