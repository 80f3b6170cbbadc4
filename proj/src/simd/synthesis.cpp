#include "relwave/simd/synthesis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "kernels.hpp"
#include "relwave/errors.hpp"

namespace relwave::simd {

namespace detail {

void kernel_scalar(const KernelArgs& g, std::size_t block_begin,
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
      double ar = 0.0, ai = 0.0, br = 0.0, bi = 0.0;
      for (std::size_t k = 0; k < g.nk; ++k) {
        const double sr = seed_re[k], si = seed_im[k];
        ar += g.a_re[k] * sr - g.a_im[k] * si;
        ai += g.a_re[k] * si + g.a_im[k] * sr;
        if (with_b) {
          br += g.b_re[k] * sr - g.b_im[k] * si;
          bi += g.b_re[k] * si + g.b_im[k] * sr;
        }
        seed_re[k] = sr * g.step_re[k] - si * g.step_im[k];
        seed_im[k] = sr * g.step_im[k] + si * g.step_re[k];
      }
      g.out_a_re[j] = ar;
      g.out_a_im[j] = ai;
      if (with_b) {
        g.out_b_re[j] = br;
        g.out_b_im[j] = bi;
      }
    }
  }
}

}  // namespace detail

namespace {

bool cpu_has_avx2() noexcept {
#if defined(RELWAVE_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<int>& active_slot() {
  static std::atomic<int> slot{static_cast<int>(detected_level())};
  return slot;
}

}  // namespace

bool level_available(Level level) noexcept {
  return level == Level::scalar || (level == Level::avx2 && cpu_has_avx2());
}

Level detected_level() noexcept { return cpu_has_avx2() ? Level::avx2 : Level::scalar; }

Level active_level() noexcept { return static_cast<Level>(active_slot().load()); }

void set_active_level(Level level) {
  if (!level_available(level))
    throw DomainError(std::string("SIMD level not available: ") + level_name(level));
  active_slot().store(static_cast<int>(level));
}

const char* level_name(Level level) noexcept {
  return level == Level::avx2 ? "avx2" : "scalar";
}

void ModeSet::reserve(std::size_t n, bool with_b) {
  p.reserve(n);
  a_re.reserve(n);
  a_im.reserve(n);
  if (with_b) {
    b_re.reserve(n);
    b_im.reserve(n);
  }
}

void ModeSet::push(double pk, Complex a) {
  if (has_b()) throw DomainError("mode set has a second channel; push both amplitudes");
  p.push_back(pk);
  a_re.push_back(a.real());
  a_im.push_back(a.imag());
}

void ModeSet::push(double pk, Complex a, Complex b) {
  if (!p.empty() && !has_b())
    throw DomainError("mode set has a single channel");
  p.push_back(pk);
  a_re.push_back(a.real());
  a_im.push_back(a.imag());
  b_re.push_back(b.real());
  b_im.push_back(b.imag());
}

SynthesisOutput synthesize(const ModeSet& modes, const UniformGrid& grid,
                           double inv_hbar, int threads) {
  return synthesize(modes, grid, inv_hbar, threads, active_level());
}

SynthesisOutput synthesize(const ModeSet& modes, const UniformGrid& grid,
                           double inv_hbar, int threads, Level level) {
  if (!level_available(level))
    throw DomainError(std::string("SIMD level not available: ") + level_name(level));
  const bool with_b = modes.has_b();
  const std::size_t n = modes.size();
  const std::size_t nk = (n + 3) / 4 * 4;

  std::vector<double> p(nk, 0.0), ar(nk, 0.0), ai(nk, 0.0), br, bi;
  std::vector<double> sr(nk, 1.0), si(nk, 0.0);
  std::copy(modes.p.begin(), modes.p.end(), p.begin());
  std::copy(modes.a_re.begin(), modes.a_re.end(), ar.begin());
  std::copy(modes.a_im.begin(), modes.a_im.end(), ai.begin());
  if (with_b) {
    br.assign(nk, 0.0);
    bi.assign(nk, 0.0);
    std::copy(modes.b_re.begin(), modes.b_re.end(), br.begin());
    std::copy(modes.b_im.begin(), modes.b_im.end(), bi.begin());
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex s = std::polar(1.0, p[k] * grid.dx * inv_hbar);
    sr[k] = s.real();
    si[k] = s.imag();
  }

  std::vector<double> oar(grid.n), oai(grid.n), obr, obi;
  if (with_b) {
    obr.resize(grid.n);
    obi.resize(grid.n);
  }
  detail::KernelArgs args{p.data(),  ar.data(),  ai.data(),
                          with_b ? br.data() : nullptr,
                          with_b ? bi.data() : nullptr,
                          sr.data(), si.data(), nk, grid.x0, grid.dx, grid.n,
                          inv_hbar,  oar.data(), oai.data(),
                          with_b ? obr.data() : nullptr,
                          with_b ? obi.data() : nullptr};

  auto kernel = detail::kernel_scalar;
#if defined(RELWAVE_HAVE_AVX2)
  if (level == Level::avx2) kernel = detail::kernel_avx2;
#endif

  const std::size_t blocks = (grid.n + kBlock - 1) / kBlock;
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads > 0 ? threads : 1, blocks));
  if (workers == 1) {
    std::vector<double> seed_re(nk), seed_im(nk);
    kernel(args, 0, blocks, seed_re.data(), seed_im.data());
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t b0 = blocks * w / workers;
      const std::size_t b1 = blocks * (w + 1) / workers;
      pool.emplace_back([&, b0, b1] {
        std::vector<double> seed_re(nk), seed_im(nk);
        kernel(args, b0, b1, seed_re.data(), seed_im.data());
      });
    }
    for (auto& t : pool) t.join();
  }

  SynthesisOutput out;
  out.a.resize(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) out.a[j] = {oar[j], oai[j]};
  if (with_b) {
    out.b.resize(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) out.b[j] = {obr[j], obi[j]};
  }
  return out;
}

}  // namespace relwave::simd
