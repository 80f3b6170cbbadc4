#pragma once

// Plane-wave synthesis on a uniform grid:
//
//   outA[j] = sum_k A_k exp(i p_k x_j / hbar),   x_j = x0 + j dx
//   outB[j] = sum_k B_k exp(i p_k x_j / hbar)    (optional second channel)
//
// Phasors are advanced by multiplication inside blocks of kBlock points and
// re-seeded from std::polar at every block start, so the phase error stays
// at a few ulps per block. The scalar kernel is the reference; the AVX2/FMA
// kernel processes four modes per instruction and is selected at runtime
// when the CPU supports it. Both sum in a fixed order, so a given kernel
// produces bit-identical output for any thread count.

#include <complex>
#include <cstddef>
#include <vector>

namespace relwave::simd {

using Complex = std::complex<double>;

enum class Level { scalar, avx2 };

inline constexpr std::size_t kBlock = 64;

Level detected_level() noexcept;   // best level the CPU and build support
Level active_level() noexcept;     // level used by synthesize() by default
void set_active_level(Level level);  // throws DomainError if unsupported
const char* level_name(Level level) noexcept;
bool level_available(Level level) noexcept;

// Modes in structure-of-arrays layout.
struct ModeSet {
  std::vector<double> p;
  std::vector<double> a_re, a_im;
  std::vector<double> b_re, b_im;  // empty when there is no second channel

  std::size_t size() const noexcept { return p.size(); }
  bool has_b() const noexcept { return !b_re.empty(); }
  void reserve(std::size_t n, bool with_b);
  void push(double pk, Complex a);
  void push(double pk, Complex a, Complex b);
};

struct UniformGrid {
  double x0 = 0.0;
  double dx = 1.0;
  std::size_t n = 0;

  double at(std::size_t j) const noexcept { return x0 + static_cast<double>(j) * dx; }
};

struct SynthesisOutput {
  std::vector<Complex> a;
  std::vector<Complex> b;  // empty when the mode set has no second channel
};

SynthesisOutput synthesize(const ModeSet& modes, const UniformGrid& grid,
                           double inv_hbar, int threads = 1);
SynthesisOutput synthesize(const ModeSet& modes, const UniformGrid& grid,
                           double inv_hbar, int threads, Level level);

}  // namespace relwave::simd
