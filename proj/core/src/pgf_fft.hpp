#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace schroeder_tails::detail {

// Smallest {2,3,5,7}-smooth integer >= n (FFT-friendly transform length).
std::size_t next_smooth_size(std::size_t n);

// One PGF iteration step, next = P(cur) as polynomial coefficients, done by
// evaluating P pointwise on the long-double DFT of cur at a transform length
// covering the product degree exactly. `pgf` holds p_0..p_N, `cur` the
// current composition's coefficients.
std::vector<double> pgf_step_fft(std::span<const double> pgf, std::span<const double> cur);

}  // namespace schroeder_tails::detail
