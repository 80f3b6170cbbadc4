#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "reference_values.hpp"
#include "relwave/errors.hpp"
#include "relwave/specfun.hpp"

using namespace relwave;
using specfun::Complex;

namespace {

const Complex kI(0.0, 1.0);
const double kPi = std::numbers::pi;

// Difference of logs, with the imaginary part reduced to (-pi, pi].
double log_distance(Complex a, Complex b) {
  Complex d = a - b;
  double im = std::remainder(d.imag(), 2.0 * kPi);
  return std::abs(Complex(d.real(), im));
}

Complex log_of(const specfun::PcfValue& v, bool derivative) {
  const Complex m = derivative ? v.derivative : v.value;
  return std::log(m) + v.log_scale;
}

// Points (+-1 +- i) s / sqrt(F) on the rays used by the field modes.
std::vector<Complex> ray_points(double force) {
  std::vector<Complex> out;
  const double r = 1.0 / std::sqrt(force);
  for (double s : {-40.0, -11.0, -2.7, -0.6, 0.05, 0.9, 3.3, 8.0, 21.0, 55.0})
    for (Complex d : {Complex(1, 1), Complex(-1, 1), Complex(1, -1), Complex(-1, -1)})
      out.push_back(d * (s * r));
  return out;
}

const Complex kOrders[] = {{-0.5, -5.0}, {-0.5, 5.0}, {-0.5, -0.5}, {-0.5, 0.5}};

}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("K1 at one") {
  CHECK(specfun::bessel_k1(1.0).real() == doctest::Approx(0.6019072302).epsilon(1e-10));
  CHECK(std::abs(specfun::bessel_k1(1.0) - oracle::k1_series(1.0)) < 1e-14);
}

TEST_CASE("z K1(z) tends to one at small real z") {
  const double z = 1e-3;
  CHECK(std::abs(z * specfun::bessel_k1(z).real() - 1.0) < 0.01);
  CHECK(std::abs(specfun::bessel_k1(z) - oracle::k1_series(z)) < 1e-12 * oracle::k1_series(z));
}

TEST_CASE("K1 is real on the real axis") {
  for (double x : {0.01, 0.3, 1.0, 4.0, 17.0, 45.0}) {
    const Complex v = specfun::bessel_k1(x);
    CHECK(std::abs(v.imag()) < 1e-14 * std::abs(v));
    // The ascending series cancels badly beyond x ~ 2; use the integral there.
    const double ref = x <= 2.0 ? oracle::k1_series(x) : oracle::k1_brute(x).real();
    CHECK(std::abs(v.real() - ref) < 1e-12 * std::abs(v));
  }
}

TEST_CASE("K1 requires Re z > 0") {
  CHECK_THROWS_AS(specfun::bessel_k1(Complex(0.0, 1.0)), DomainError);
  CHECK_THROWS_AS(specfun::bessel_k1(Complex(-1.0, 0.2)), DomainError);
}

TEST_CASE("K1 against reference values") {
  for (const auto& r : testref::kK1) {
    const Complex z(r.z_re, r.z_im);
    const Complex ref(r.re, r.im);
    INFO("z = " << z);
    CHECK(oracle::rel_err(specfun::bessel_k1(z), ref) < 1e-12);
  }
}

TEST_CASE("K1 against brute-force quadrature of its integral") {
  // Log grid over |z| in [1e-2, 30] and arg z in (-pi/2, pi/2); the plain
  // trapezoid oracle is only used where its integrand does not oscillate much.
  int checked = 0;
  for (int i = 0; i < 10; ++i) {
    const double r = 1e-2 * std::pow(3000.0, i / 9.0);
    for (int j = 0; j < 10; ++j) {
      const double a = -1.2 + 2.4 * j / 9.0;
      const Complex z = std::polar(r, a);
      if (std::abs(z.imag()) > 4.0 * z.real() + 3.0) continue;
      INFO("z = " << z);
      CHECK(oracle::rel_err(specfun::bessel_k1(z), oracle::k1_brute(z)) < 1e-9);
      ++checked;
    }
  }
  CHECK(checked > 60);
}

TEST_CASE("scaled K0, K1, K2 obey the recurrence") {
  // K_2(z) = K_0(z) + (2/z) K_1(z)
  for (Complex z : {Complex(0.1, 0.05), Complex(2.0, -1.0), Complex(9.0, 20.0)}) {
    const auto k = specfun::bessel_k012_scaled(z);
    CHECK(oracle::rel_err(k[0] + 2.0 / z * k[1], k[2]) < 1e-13);
  }
}

TEST_CASE("gamma function") {
  CHECK(specfun::gamma(5.0).real() == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(specfun::gamma(0.5).real() == doctest::Approx(std::sqrt(kPi)).epsilon(1e-15));
  CHECK(std::abs(specfun::rgamma(-3.0)) == 0.0);
  // |Gamma(1/2 + i y)|^2 = pi / cosh(pi y)
  for (double y : {0.3, 2.5, 7.0}) {
    const double m = std::norm(specfun::gamma(Complex(0.5, y)));
    CHECK(m == doctest::Approx(kPi / std::cosh(kPi * y)).epsilon(1e-14));
  }
  // Gamma(z + 1) = z Gamma(z)
  const Complex z(-2.3, 1.7);
  CHECK(oracle::rel_err(specfun::gamma(z + 1.0), z * specfun::gamma(z)) < 1e-14);
}

TEST_CASE("elementary orders") {
  const Complex z0(1.0, 1.0);
  CHECK(oracle::rel_err(specfun::pcf_d(0.0, z0), std::exp(-0.5 * kI)) < 1e-14);
  CHECK(oracle::rel_err(specfun::pcf_d(1.0, 2.0), 2.0 * std::exp(-1.0)) < 1e-14);
  CHECK(oracle::rel_err(specfun::pcf_d_dz(0.0, 1.0), -0.5 * std::exp(-0.25)) < 1e-14);
  CHECK(oracle::rel_err(specfun::pcf_d_dz(1.0, 1.0), 0.5 * std::exp(-0.25)) < 1e-14);
  // Hermite form: D_n(z) = 2^{-n/2} e^{-z^2/4} H_n(z / sqrt 2).
  for (Complex z : {Complex(0.7, -0.2), Complex(-3.0, 2.0), Complex(6.0, 5.0)}) {
    const Complex e = std::exp(-z * z / 4.0);
    CHECK(oracle::rel_err(specfun::pcf_d(2.0, z), (z * z - 1.0) * e) < 1e-12);
    CHECK(oracle::rel_err(specfun::pcf_d(3.0, z), (z * z * z - 3.0 * z) * e) < 1e-12);
  }
}

TEST_CASE("reference values on the field rays") {
  for (const auto& r : testref::kPcf) {
    const Complex nu(r.nu_re, r.nu_im), z(r.z_re, r.z_im);
    const auto v = specfun::pcf_d_scaled(nu, z);
    INFO("nu = " << nu << ", z = " << z);
    CHECK(log_distance(log_of(v, false), Complex(r.log_abs, r.arg)) < 1e-12);
    CHECK(log_distance(log_of(v, true), Complex(r.dlog_abs, r.darg)) < 1e-12);
    CHECK(v.rel_error < 1e-12);
  }
}

TEST_CASE("recurrence at nu = -1/2 + 5i, z = 3(1+i)") {
  const Complex nu(-0.5, 5.0), z(3.0, 3.0);
  const Complex a = specfun::pcf_d(nu + 1.0, z);
  const Complex b = z * specfun::pcf_d(nu, z);
  const Complex c = nu * specfun::pcf_d(nu - 1.0, z);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  CHECK(std::abs(a - b + c) < 1e-9 * scale);
}

TEST_CASE("recurrence and derivative relations along the rays") {
  for (Complex nu : kOrders) {
    for (Complex z : ray_points(0.1)) {
      // Work with scaled values relative to D_nu(z) to stay finite.
      const auto d0 = specfun::pcf_d_scaled(nu, z);
      const auto dp = specfun::pcf_d_scaled(nu + 1.0, z);
      const auto dm = specfun::pcf_d_scaled(nu - 1.0, z);
      auto rel = [&](const specfun::PcfValue& v, Complex m) {
        return m * std::exp(v.log_scale - d0.log_scale);
      };
      const Complex v0 = d0.value, vp = rel(dp, dp.value), vm = rel(dm, dm.value);
      const Complex dv0 = d0.derivative;
      INFO("nu = " << nu << ", z = " << z);
      const double s1 = std::max({std::abs(vp), std::abs(z * v0), std::abs(nu * vm)});
      CHECK(std::abs(vp - z * v0 + nu * vm) < 1e-9 * s1);
      const double s2 = std::max({std::abs(dv0), std::abs(0.5 * z * v0), std::abs(vp)});
      CHECK(std::abs(dv0 - (0.5 * z * v0 - vp)) < 1e-9 * s2);
      const double s3 = std::max({std::abs(dv0), std::abs(nu * vm), std::abs(0.5 * z * v0)});
      CHECK(std::abs(dv0 - (nu * vm - 0.5 * z * v0)) < 1e-9 * s3);
    }
  }
}

TEST_CASE("ODE residual from the two derivative relations") {
  // D'' = d/dz [nu D_{nu-1} - z/2 D_nu] = nu D'_{nu-1} - D_nu/2 - z/2 D'_nu,
  // with D'_{nu-1} = (z/2) D_{nu-1} - D_nu.
  for (Complex nu : kOrders) {
    for (Complex z : ray_points(0.1)) {
      const auto d0 = specfun::pcf_d_scaled(nu, z);
      const auto dm = specfun::pcf_d_scaled(nu - 1.0, z);
      const Complex vm = dm.value * std::exp(dm.log_scale - d0.log_scale);
      const Complex v0 = d0.value, dv0 = d0.derivative;
      const Complex dvm = 0.5 * z * vm - v0;
      const Complex d2 = nu * dvm - 0.5 * v0 - 0.5 * z * dv0;
      const Complex residual = d2 + (nu + 0.5 - 0.25 * z * z) * v0;
      const double scale = std::abs(d2) + std::abs((nu + 0.5 - 0.25 * z * z) * v0);
      INFO("nu = " << nu << ", z = " << z);
      CHECK(std::abs(residual) < 1e-7 * scale);
    }
  }
}

TEST_CASE("derivative matches central differences") {
  for (Complex nu : kOrders) {
    for (Complex z : ray_points(0.1)) {
      if (std::abs(z) > 60.0) continue;
      // D oscillates with local wavenumber ~|z|/2.
      const double h = 1e-3 / (1.0 + 0.5 * std::abs(z));
      const auto d0 = specfun::pcf_d_scaled(nu, z);
      Complex fd = 0.0;
      // Four-point stencil along the ray direction.
      const Complex dir = z == 0.0 ? Complex(1.0) : z / std::abs(z);
      const double w[4] = {1.0 / 12.0, -2.0 / 3.0, 2.0 / 3.0, -1.0 / 12.0};
      const double off[4] = {-2, -1, 1, 2};
      for (int k = 0; k < 4; ++k) {
        const auto v = specfun::pcf_d_scaled(nu, z + off[k] * h * dir);
        fd += w[k] * v.value * std::exp(v.log_scale - d0.log_scale);
      }
      fd /= h * dir;
      INFO("nu = " << nu << ", z = " << z);
      CHECK(oracle::rel_err(fd, d0.derivative) < 1e-6);
    }
  }
}

TEST_CASE("conjugation symmetry") {
  for (Complex nu : kOrders) {
    for (Complex z : ray_points(0.1)) {
      const auto a = specfun::pcf_d_scaled(nu, z);
      const auto b = specfun::pcf_d_scaled(std::conj(nu), std::conj(z));
      const Complex bv = std::conj(b.value) * std::exp(b.log_scale - a.log_scale);
      CHECK(oracle::rel_err(bv, a.value) < 1e-12);
    }
  }
}

TEST_CASE("Wronskian of D_nu(z) and D_nu(-z)") {
  // W[D_nu(z), D_nu(-z)] = sqrt(2 pi) / Gamma(-nu).
  for (Complex nu : kOrders) {
    const Complex w_ref = std::sqrt(2.0 * kPi) * specfun::rgamma(-nu);
    for (Complex z : ray_points(0.1)) {
      if (std::abs(z) > 30.0) continue;
      const auto a = specfun::pcf_d_scaled(nu, z);
      const auto b = specfun::pcf_d_scaled(nu, -z);
      // d/dz D_nu(-z) = -D'_nu(-z)
      const Complex w = std::exp(a.log_scale + b.log_scale) *
                        (a.value * -b.derivative - a.derivative * b.value);
      const double terms = std::exp(a.log_scale + b.log_scale) *
                           (std::abs(a.value * b.derivative) + std::abs(a.derivative * b.value));
      INFO("nu = " << nu << ", z = " << z);
      CHECK(std::abs(w - w_ref) < 1e-13 * terms + 1e-12 * std::abs(w_ref));
    }
  }
}

TEST_CASE("field-mode orders") {
  const auto o = specfun::PcfOrder::for_field_mode(1.0, 0.1, 1);
  CHECK(o.value() == Complex(-0.5, -5.0));
  CHECK(o.on_field_line());
  CHECK(specfun::PcfOrder::for_field_mode(1.0, 0.1, -1).value() == Complex(-0.5, 5.0));
  CHECK_THROWS_AS(specfun::PcfOrder::for_field_mode(1.0, 0.0, 1), DomainError);
  CHECK_THROWS_AS(specfun::PcfOrder::for_field_mode(1.0, 0.1, 0), DomainError);
  CHECK_THROWS_AS(specfun::PcfOrder(Complex(std::numeric_limits<double>::infinity(), 0.0)),
                  DomainError);
}

TEST_CASE("non-finite arguments are rejected") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(specfun::pcf_d(Complex(-0.5, 5.0), Complex(nan, 0.0)), DomainError);
}

}  // TEST_SUITE
