#include "relwave/kinematics.hpp"

#include <cmath>

#include "relwave/errors.hpp"
#include "relwave/quadrature.hpp"

namespace relwave {

void PhysParams::validate() const {
  if (!(m > 0.0) || !(c > 0.0) || !(hbar > 0.0))
    throw DomainError("m, c and hbar must be strictly positive");
  if (q == 0.0 || !std::isfinite(q)) throw DomainError("charge q must be nonzero");
}

FreeMotion::FreeMotion(double v0, double x0, PhysParams params)
    : v0_(v0), x0_(x0), pp_(params) {
  pp_.validate();
  const double beta = v0 / pp_.c;
  if (!(std::fabs(beta) < 1.0)) throw DomainError("free motion requires |v0| < c");
  gamma0_ = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
  p0_ = pp_.m * v0_ * gamma0_;
}

FreeMotion FreeMotion::from_gamma(double gamma0, double x0, PhysParams params) {
  if (!(gamma0 >= 1.0)) throw DomainError("Lorentz factor must be >= 1");
  // v = c sqrt(1 - 1/gamma^2) computed as c sqrt((g-1)(g+1))/g.
  const double v = params.c * std::sqrt((gamma0 - 1.0) * (gamma0 + 1.0)) / gamma0;
  return FreeMotion(v, x0, params);
}

FreeMotion FreeMotion::from_momentum(double p0, double x0, PhysParams params) {
  params.validate();
  const double u = p0 / (params.m * params.c);
  return FreeMotion(params.c * u / std::sqrt(1.0 + u * u), x0, params);
}

FieldMotion::FieldMotion(double force, double p0, PhysParams params)
    : FieldMotion(force, p0, params.m * params.c * params.c / force, params) {}

FieldMotion::FieldMotion(double force, double p0, double x_start, PhysParams params)
    : force_(force), p0_(p0), x_start_(x_start), pp_(params) {
  pp_.validate();
  if (force == 0.0 || !std::isfinite(force))
    throw DomainError("field motion requires a finite nonzero force");
  alpha_ = force / (pp_.m * pp_.c);
  t0_ = p0 / force;
}

double FieldMotion::action_integrand(double t) const noexcept {
  const double u = t + t0_;
  return (1.0 + alpha_ * alpha_ * t * u) / std::sqrt(1.0 + alpha_ * alpha_ * u * u);
}

TrajectorySample free_trajectory(double t, const FreeMotion& motion) {
  TrajectorySample s;
  s.t = t;
  s.x = motion.x0() + motion.v0() * t;
  s.v = motion.v0();
  s.gamma = motion.gamma0();
  s.tau = t / motion.gamma0();
  return s;
}

TrajectorySample field_trajectory(double t, const FieldMotion& motion) {
  const double c = motion.params().c;
  const double a = motion.alpha();
  const double u = t + motion.t0();
  const double inv = 1.0 / a;
  TrajectorySample s;
  s.t = t;
  s.gamma = std::sqrt(1.0 + a * a * u * u);
  s.x = motion.x_start() + c * std::hypot(inv, u) - c * std::hypot(inv, motion.t0());
  s.v = c * a * u / s.gamma;
  s.tau = (std::asinh(a * u) - std::asinh(a * motion.t0())) / a;
  return s;
}

double action_free(double t, const FreeMotion& motion) {
  return -motion.params().rest_energy() * t / motion.gamma0();
}

ActionResult action_field(double t, const FieldMotion& motion) {
  ActionResult r;
  if (t == 0.0) return r;
  const double lo = std::min(0.0, t);
  const double hi = std::max(0.0, t);
  const auto q = quad::integrate_finite(
      [&motion](double s) { return quad::Complex(motion.action_integrand(s), 0.0); },
      lo, hi, 1e-13);
  const double sign = t > 0.0 ? 1.0 : -1.0;
  const double mc2 = motion.params().rest_energy();
  r.value = -mc2 * sign * q.value.real();
  r.error = mc2 * q.error;
  r.converged = q.converged;
  return r;
}

}  // namespace relwave
