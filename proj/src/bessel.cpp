#include <cmath>

#include "relwave/errors.hpp"
#include "relwave/quadrature.hpp"
#include "relwave/specfun.hpp"

namespace relwave::specfun {

// e^z K_n(z) = int_0^inf exp(-z (cosh k - 1)) cosh(n k) dk.
//
// The path k(s) = s - i theta tanh(c s), theta = arg z, c = tan(theta/2)/theta,
// leaves the origin along the steepest-descent direction of the exponent and
// approaches Im k = -theta, where z cosh k is real and positive. The
// integrand stays even in s, so the half-line trapezoid rule with a half
// weight at s = 0 converges exponentially.
std::array<Complex, 3> bessel_k012_scaled(Complex z) {
  if (!(z.real() > 0.0))
    throw DomainError("modified Bessel K requires Re z > 0");
  const double theta = std::arg(z);
  const double tq = std::tan(0.5 * theta);
  const double c = std::fabs(theta) < 1e-12 ? 0.5 : tq / theta;

  auto integrand = [&](double s) -> std::array<Complex, 3> {
    const double th = std::tanh(c * s);
    const double sech2 = 1.0 - th * th;
    const Complex k(s, -theta * th);
    const Complex dk(1.0, -tq * sech2);
    const Complex ch = std::cosh(k);
    // cosh k - 1 = 2 sinh^2(k/2) avoids cancellation near the origin.
    const Complex sh = std::sinh(0.5 * k);
    const Complex e = std::exp(-z * (2.0 * sh * sh)) * dk;
    return {e, e * ch, e * (2.0 * ch * ch - 1.0)};
  };

  quad::QuadratureSpec spec;
  spec.domain = quad::DomainKind::half_line;
  spec.lower = 0.0;
  spec.substitution = quad::Substitution::identity;
  spec.step = 0.5 / std::sqrt(1.0 + std::abs(z));
  spec.rel_tol = 1e-14;
  spec.abs_tol = 0.0;
  spec.tail_tol = 1e-18;
  spec.min_levels = 1;
  spec.max_nodes = 1 << 16;
  const auto r = quad::integrate_complex_n<3>(integrand, spec);
  if (!r.converged && r.error > 1e-11 * std::abs(r.value[0]))
    throw AccuracyError("modified Bessel K quadrature did not converge");
  return r.value;
}

Complex bessel_k1_scaled(Complex z) { return bessel_k012_scaled(z)[1]; }

Complex bessel_k1(Complex z) { return std::exp(-z) * bessel_k1_scaled(z); }

}  // namespace relwave::specfun
