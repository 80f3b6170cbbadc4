#pragma once

#include <cstddef>

namespace relwave::simd::detail {

// Padded SoA inputs; nk is a multiple of 4 and padded modes carry zero
// amplitude. Output arrays hold nx entries; b outputs are null when absent.
struct KernelArgs {
  const double* p;
  const double* a_re;
  const double* a_im;
  const double* b_re;
  const double* b_im;
  const double* step_re;  // exp(i p dx / hbar)
  const double* step_im;
  std::size_t nk;
  double x0;
  double dx;
  std::size_t nx;
  double inv_hbar;
  double* out_a_re;
  double* out_a_im;
  double* out_b_re;
  double* out_b_im;
};

// Processes grid blocks [block_begin, block_end). seed_re/seed_im are
// caller-provided scratch arrays of length nk.
void kernel_scalar(const KernelArgs& args, std::size_t block_begin,
                   std::size_t block_end, double* seed_re, double* seed_im);

#if defined(RELWAVE_HAVE_AVX2)
void kernel_avx2(const KernelArgs& args, std::size_t block_begin,
                 std::size_t block_end, double* seed_re, double* seed_im);
#endif

}  // namespace relwave::simd::detail
