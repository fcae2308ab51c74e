#include "pgf_fft.hpp"

#include <fftw3.h>

#include <complex>
#include <memory>

#include "schroeder_tails/errors.hpp"

namespace schroeder_tails::detail {

namespace {

struct FftwlDeleter {
  void operator()(void* p) const { fftwl_free(p); }
};

template <typename T>
using fftwl_buffer = std::unique_ptr<T[], FftwlDeleter>;

template <typename T>
fftwl_buffer<T> alloc_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftwl_malloc(sizeof(T) * n));
  if (!p) throw std::bad_alloc();
  return fftwl_buffer<T>(p);
}

struct PlanDeleter {
  void operator()(fftwl_plan p) const { fftwl_destroy_plan(p); }
};

using plan_ptr = std::unique_ptr<std::remove_pointer_t<fftwl_plan>, PlanDeleter>;

}  // namespace

std::size_t next_smooth_size(std::size_t n) {
  if (n < 2) return 2;
  for (std::size_t cand = n;; ++cand) {
    std::size_t r = cand;
    for (std::size_t f : {2u, 3u, 5u, 7u})
      while (r % f == 0) r /= f;
    if (r == 1) return cand;
  }
}

std::vector<double> pgf_step_fft(std::span<const double> pgf, std::span<const double> cur) {
  const std::size_t deg_p = pgf.size() - 1;
  const std::size_t deg_out = deg_p * (cur.size() - 1);
  const std::size_t len = next_smooth_size(deg_out + 1);
  const std::size_t spec_len = len / 2 + 1;

  auto real_buf = alloc_buffer<long double>(len);
  auto spec_buf = alloc_buffer<fftwl_complex>(spec_len);

  // FFTW planning is not thread safe; iterate_pgf drives this from a single
  // thread. FFTW_ESTIMATE keeps plans deterministic.
  plan_ptr forward(fftwl_plan_dft_r2c_1d(static_cast<int>(len), real_buf.get(),
                                         spec_buf.get(), FFTW_ESTIMATE));
  plan_ptr backward(fftwl_plan_dft_c2r_1d(static_cast<int>(len), spec_buf.get(),
                                          real_buf.get(), FFTW_ESTIMATE));
  if (!forward || !backward)
    fail(errc::no_convergence, "fftw plan creation failed");

  for (std::size_t i = 0; i < cur.size(); ++i) real_buf[i] = cur[i];
  for (std::size_t i = cur.size(); i < len; ++i) real_buf[i] = 0.0L;
  fftwl_execute(forward.get());

  // P has real coefficients, so applying it pointwise preserves the
  // Hermitian symmetry of the half spectrum.
  auto* spec = reinterpret_cast<std::complex<long double>*>(spec_buf.get());
  for (std::size_t k = 0; k < spec_len; ++k) {
    const std::complex<long double> v = spec[k];
    std::complex<long double> h(static_cast<long double>(pgf[deg_p]), 0.0L);
    for (std::size_t j = deg_p; j-- > 0;) h = h * v + static_cast<long double>(pgf[j]);
    spec[k] = h;
  }

  fftwl_execute(backward.get());

  const long double scale = 1.0L / static_cast<long double>(len);
  std::vector<double> out(deg_out + 1);
  for (std::size_t i = 0; i <= deg_out; ++i)
    out[i] = static_cast<double>(real_buf[i] * scale);
  return out;
}

}  // namespace schroeder_tails::detail
