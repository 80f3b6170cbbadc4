#include <cmath>
#include <cstring>
#include <random>

#include <doctest.h>

#include "relwave/errors.hpp"
#include "relwave/simd/synthesis.hpp"

using namespace relwave;
using simd::Complex;

namespace {

simd::ModeSet random_modes(std::size_t n, bool with_b, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  simd::ModeSet m;
  m.reserve(n, with_b);
  for (std::size_t k = 0; k < n; ++k) {
    const double p = -8.0 + 16.0 * static_cast<double>(k) / static_cast<double>(n);
    if (with_b)
      m.push(p, Complex(u(rng), u(rng)), Complex(u(rng), u(rng)));
    else
      m.push(p, Complex(u(rng), u(rng)));
  }
  return m;
}

// Unoptimized reference: one std::polar per term, extended-precision sum.
std::vector<Complex> direct(const simd::ModeSet& m, const simd::UniformGrid& g, bool b) {
  std::vector<Complex> out(g.n);
  for (std::size_t j = 0; j < g.n; ++j) {
    long double re = 0, im = 0;
    for (std::size_t k = 0; k < m.size(); ++k) {
      const Complex a = b ? Complex(m.b_re[k], m.b_im[k]) : Complex(m.a_re[k], m.a_im[k]);
      const Complex v = a * std::polar(1.0, m.p[k] * g.at(j));
      re += v.real();
      im += v.imag();
    }
    out[j] = Complex(static_cast<double>(re), static_cast<double>(im));
  }
  return out;
}

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool bit_equal(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(Complex)) == 0;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar kernel matches a direct sum") {
  const auto m = random_modes(301, true, 7);
  const simd::UniformGrid g{-30.0, 0.137, 700};
  const auto out = simd::synthesize(m, g, 1.0, 1, simd::Level::scalar);
  const double scale = std::sqrt(static_cast<double>(m.size()));
  CHECK(max_abs_diff(out.a, direct(m, g, false)) < 1e-12 * scale);
  CHECK(max_abs_diff(out.b, direct(m, g, true)) < 1e-12 * scale);
}

TEST_CASE("AVX2 kernel agrees with the scalar kernel") {
  if (!simd::level_available(simd::Level::avx2)) {
    MESSAGE("AVX2 not available on this machine; skipped");
    CHECK_THROWS_AS(simd::set_active_level(simd::Level::avx2), DomainError);
    return;
  }
  // Mode counts that leave every possible remainder of the 4-wide loop.
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 63u, 64u, 65u, 1027u}) {
    for (bool with_b : {false, true}) {
      const auto m = random_modes(n, with_b, 11 + n);
      const simd::UniformGrid g{-50.0, 0.0731, 1500};
      const auto s = simd::synthesize(m, g, 1.0, 1, simd::Level::scalar);
      const auto v = simd::synthesize(m, g, 1.0, 1, simd::Level::avx2);
      const double scale = std::sqrt(static_cast<double>(n));
      INFO("modes = " << n);
      CHECK(max_abs_diff(s.a, v.a) < 1e-13 * scale);
      if (with_b) CHECK(max_abs_diff(s.b, v.b) < 1e-13 * scale);
    }
  }
}

TEST_CASE("output is bit-identical for any thread count") {
  const auto m = random_modes(515, true, 3);
  const simd::UniformGrid g{-20.0, 0.01, 4099};
  for (simd::Level lv : {simd::Level::scalar, simd::Level::avx2}) {
    if (!simd::level_available(lv)) continue;
    const auto one = simd::synthesize(m, g, 1.0, 1, lv);
    for (int threads : {2, 3, 8}) {
      const auto many = simd::synthesize(m, g, 1.0, threads, lv);
      CHECK(bit_equal(one.a, many.a));
      CHECK(bit_equal(one.b, many.b));
    }
  }
}

TEST_CASE("inverse hbar scales the phase") {
  const auto m = random_modes(40, false, 5);
  const simd::UniformGrid g{-3.0, 0.05, 200};
  simd::ModeSet m2 = m;
  for (double& p : m2.p) p *= 0.5;
  const auto a = simd::synthesize(m, g, 0.5, 1, simd::Level::scalar);
  const auto b = simd::synthesize(m2, g, 1.0, 1, simd::Level::scalar);
  CHECK(max_abs_diff(a.a, b.a) < 1e-13);
}

TEST_CASE("level bookkeeping") {
  CHECK(simd::level_available(simd::Level::scalar));
  CHECK(std::strcmp(simd::level_name(simd::Level::scalar), "scalar") == 0);
  const simd::Level before = simd::active_level();
  simd::set_active_level(simd::Level::scalar);
  CHECK(simd::active_level() == simd::Level::scalar);
  simd::set_active_level(before);
  CHECK(simd::level_available(simd::detected_level()));
}

TEST_CASE("mode set channel checks") {
  simd::ModeSet m;
  m.push(0.0, Complex(1.0));
  CHECK_THROWS_AS(m.push(1.0, Complex(1.0), Complex(2.0)), DomainError);
  simd::ModeSet b;
  b.push(0.0, Complex(1.0), Complex(2.0));
  CHECK_THROWS_AS(b.push(1.0, Complex(1.0)), DomainError);
}

}  // TEST_SUITE
