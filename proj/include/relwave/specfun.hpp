#pragma once

// Complex special functions used by the closed-form wavepackets.
//
//  * K_n(z), n = 0, 1, 2, for Re z > 0, by trapezoid quadrature of
//        K_n(z) = int_0^inf exp(-z cosh k) cosh(n k) dk
//    along a contour bent towards the steepest-descent direction of the
//    exponent, so the integrand stays non-oscillatory for any arg z.
//  * D_nu(z), Whittaker's parabolic cylinder function, for complex order
//    and argument, together with dD/dz. Small |z| uses the Maclaurin
//    series; large |z| the Poincare expansion (with the connection formula
//    near |arg z| = 3 pi / 4); in between a Taylor-series ODE integrator
//    carries values along the ray from the nearest accurate regime.
//
// Values that may overflow are available in scaled form
// (value * exp(log_scale)).

#include <array>
#include <complex>

namespace relwave::specfun {

using Complex = std::complex<double>;

// log Gamma(z) (imaginary part defined up to 2 pi i) and 1/Gamma(z).
Complex lgamma(Complex z);
Complex rgamma(Complex z);
Complex gamma(Complex z);

// exp(z) K_n(z) for n = 0, 1, 2 evaluated in one quadrature pass.
std::array<Complex, 3> bessel_k012_scaled(Complex z);
Complex bessel_k1(Complex z);
Complex bessel_k1_scaled(Complex z);

// Parabolic cylinder value and derivative sharing a real log-scale:
// D = value * exp(log_scale), D' = derivative * exp(log_scale).
// pcf_d_scaled throws AccuracyError when no evaluation route reaches an
// estimated relative error of 1e-8.
struct PcfValue {
  Complex value;
  Complex derivative;
  double log_scale = 0.0;
  double rel_error = 0.0;  // estimated relative error of value/derivative

  Complex unscaled_value() const;
  Complex unscaled_derivative() const;
};

PcfValue pcf_d_scaled(Complex nu, Complex z);
Complex pcf_d(Complex nu, Complex z);
Complex pcf_d_dz(Complex nu, Complex z);

// Order of the uniform-field mode functions, -1/2 - sign * i M^2 / (2F).
class PcfOrder {
 public:
  // sign = +1 gives -1/2 - i M^2/(2F); sign = -1 its conjugate.
  static PcfOrder for_field_mode(double mass_squared, double force, int sign);
  explicit PcfOrder(Complex nu);

  Complex value() const noexcept { return nu_; }
  bool on_field_line() const noexcept;  // Re nu == -1/2

 private:
  Complex nu_;
};

}  // namespace relwave::specfun
