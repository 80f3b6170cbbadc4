#pragma once

// Particle constants, classical worldlines and classical actions.

namespace relwave {

struct PhysParams {
  double m = 1.0;
  double c = 1.0;
  double hbar = 1.0;
  double q = 1.0;

  void validate() const;  // throws DomainError
  double rest_energy() const noexcept { return m * c * c; }
  double reduced_compton() const noexcept { return hbar / (m * c); }
  bool natural() const noexcept { return m == 1.0 && c == 1.0 && hbar == 1.0; }
};

struct TrajectorySample {
  double t = 0.0;
  double x = 0.0;
  double v = 0.0;
  double gamma = 1.0;
  double tau = 0.0;

  double momentum(const PhysParams& pp) const noexcept { return pp.m * v * gamma; }
};

// Uniform motion with |v0| < c.
class FreeMotion {
 public:
  FreeMotion(double v0, double x0, PhysParams params = {});
  static FreeMotion from_gamma(double gamma0, double x0, PhysParams params = {});
  static FreeMotion from_momentum(double p0, double x0, PhysParams params = {});

  double v0() const noexcept { return v0_; }
  double x0() const noexcept { return x0_; }
  double gamma0() const noexcept { return gamma0_; }
  double p0() const noexcept { return p0_; }
  const PhysParams& params() const noexcept { return pp_; }
  // Classical Lagrangian of the free particle, -m c^2 / gamma0.
  double lagrangian() const noexcept { return -pp_.rest_energy() / gamma0_; }

 private:
  double v0_, x0_, gamma0_, p0_;
  PhysParams pp_;
};

// Constant force F = q E along x with initial momentum p0. The worldline is
//   x(t) = x_start + c sqrt(alpha^-2 + (t+t0)^2) - c sqrt(alpha^-2 + t0^2),
// alpha = F/(m c), t0 = p0/F; x_start defaults to c/alpha.
class FieldMotion {
 public:
  FieldMotion(double force, double p0, PhysParams params = {});
  FieldMotion(double force, double p0, double x_start, PhysParams params);

  double force() const noexcept { return force_; }
  double p0() const noexcept { return p0_; }
  double alpha() const noexcept { return alpha_; }
  double t0() const noexcept { return t0_; }
  double x_start() const noexcept { return x_start_; }
  const PhysParams& params() const noexcept { return pp_; }

  // Integrand of the classical action divided by -m c^2:
  //   (1 + alpha^2 t (t + t0)) / sqrt(1 + alpha^2 (t + t0)^2).
  double action_integrand(double t) const noexcept;

 private:
  double force_, p0_, alpha_, t0_, x_start_;
  PhysParams pp_;
};

TrajectorySample free_trajectory(double t, const FreeMotion& motion);
TrajectorySample field_trajectory(double t, const FieldMotion& motion);

double action_free(double t, const FreeMotion& motion);

struct ActionResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

ActionResult action_field(double t, const FieldMotion& motion);

}  // namespace relwave
