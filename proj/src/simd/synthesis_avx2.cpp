// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>
#include <complex>

#include "kernels.hpp"
#include "relwave/simd/synthesis.hpp"

namespace relwave::simd::detail {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void kernel_avx2(const KernelArgs& g, std::size_t block_begin,
                 std::size_t block_end, double* seed_re, double* seed_im) {
  const bool with_b = g.out_b_re != nullptr;
  for (std::size_t blk = block_begin; blk < block_end; ++blk) {
    const std::size_t j0 = blk * kBlock;
    const std::size_t j1 = std::min(g.nx, j0 + kBlock);
    const double xb = g.x0 + static_cast<double>(j0) * g.dx;
    for (std::size_t k = 0; k < g.nk; ++k) {
      const std::complex<double> s = std::polar(1.0, g.p[k] * xb * g.inv_hbar);
      seed_re[k] = s.real();
      seed_im[k] = s.imag();
    }
    for (std::size_t j = j0; j < j1; ++j) {
      __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
      __m256d br = _mm256_setzero_pd(), bi = _mm256_setzero_pd();
      for (std::size_t k = 0; k < g.nk; k += 4) {
        const __m256d sr = _mm256_loadu_pd(seed_re + k);
        const __m256d si = _mm256_loadu_pd(seed_im + k);
        const __m256d xr = _mm256_loadu_pd(g.a_re + k);
        const __m256d xi = _mm256_loadu_pd(g.a_im + k);
        ar = _mm256_fmadd_pd(xr, sr, ar);
        ar = _mm256_fnmadd_pd(xi, si, ar);
        ai = _mm256_fmadd_pd(xr, si, ai);
        ai = _mm256_fmadd_pd(xi, sr, ai);
        if (with_b) {
          const __m256d yr = _mm256_loadu_pd(g.b_re + k);
          const __m256d yi = _mm256_loadu_pd(g.b_im + k);
          br = _mm256_fmadd_pd(yr, sr, br);
          br = _mm256_fnmadd_pd(yi, si, br);
          bi = _mm256_fmadd_pd(yr, si, bi);
          bi = _mm256_fmadd_pd(yi, sr, bi);
        }
        const __m256d rr = _mm256_loadu_pd(g.step_re + k);
        const __m256d ri = _mm256_loadu_pd(g.step_im + k);
        _mm256_storeu_pd(seed_re + k, _mm256_fmsub_pd(sr, rr, _mm256_mul_pd(si, ri)));
        _mm256_storeu_pd(seed_im + k, _mm256_fmadd_pd(sr, ri, _mm256_mul_pd(si, rr)));
      }
      g.out_a_re[j] = hsum(ar);
      g.out_a_im[j] = hsum(ai);
      if (with_b) {
        g.out_b_re[j] = hsum(br);
        g.out_b_im[j] = hsum(bi);
      }
    }
  }
}

}  // namespace relwave::simd::detail
