#include <array>
#include <cmath>
#include <numbers>

#include "gamma_ext.hpp"
#include "relwave/specfun.hpp"

namespace relwave::specfun {

namespace detail {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// B_2k / (2k (2k - 1)) for k = 1..12.
constexpr std::array<long double, 12> kStirling = {
    1.0L / 12.0L,
    -1.0L / 360.0L,
    1.0L / 1260.0L,
    -1.0L / 1680.0L,
    1.0L / 1188.0L,
    -691.0L / 360360.0L,
    1.0L / 156.0L,
    -3617.0L / 122400.0L,
    43867.0L / 244188.0L,
    -174611.0L / 125400.0L,
    77683.0L / 5796.0L,
    -236364091.0L / 1506960.0L};

constexpr long double kShiftRadius = 16.0L;

// Stirling series after shifting |z| beyond kShiftRadius, Re z >= 1/2.
XComplex lgamma_right(XComplex z) {
  XComplex shift = 0.0L;
  while (std::abs(z) < kShiftRadius) {
    shift += std::log(z);
    z += 1.0L;
  }
  const XComplex iz = 1.0L / z;
  const XComplex iz2 = iz * iz;
  XComplex s = 0.0L;
  for (std::size_t k = kStirling.size(); k-- > 0;) s = s * iz2 + kStirling[k];
  s *= iz;
  return (z - 0.5L) * std::log(z) - z + 0.5L * std::log(2.0L * kPi) + s - shift;
}

}  // namespace

// log sin(w) without overflow for large |Im w|.
XComplex log_sin_ext(XComplex w) {
  if (w.imag() < 0.0L) return std::conj(log_sin_ext(std::conj(w)));
  if (w.imag() < 1.0L) return std::log(std::sin(w));
  // sin w = (i/2) e^{-iw} (1 - e^{2iw}), |e^{2iw}| < 1 here.
  const XComplex i(0.0L, 1.0L);
  return -i * w + std::log(1.0L - std::exp(2.0L * i * w)) +
         XComplex(std::log(0.5L), 0.5L * kPi);
}

XComplex lgamma_ext(XComplex z) {
  if (z.real() < 0.5L) {
    // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    return std::log(kPi) - log_sin_ext(kPi * z) - lgamma_right(1.0L - z);
  }
  return lgamma_right(z);
}

}  // namespace detail

namespace {

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

Complex lgamma(Complex z) {
  const detail::XComplex v = detail::lgamma_ext(detail::XComplex(z.real(), z.imag()));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

Complex rgamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  const detail::XComplex v =
      std::exp(-detail::lgamma_ext(detail::XComplex(z.real(), z.imag())));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

Complex gamma(Complex z) {
  const detail::XComplex v =
      std::exp(detail::lgamma_ext(detail::XComplex(z.real(), z.imag())));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

}  // namespace relwave::specfun
