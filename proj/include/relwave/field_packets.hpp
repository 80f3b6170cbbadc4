#pragma once

// Charged scalar in a uniform electric field, gauge A = (0, -E t, 0, 0),
// natural units c = hbar = 1 with transverse momenta set to zero.
//
// Each canonical momentum p carries the mode
//   psi_p(t) = c+ D_{nu+}(z+) + c- D_{nu-}(z-),
//   nu+- = -1/2 -+ i M^2/(2F),  z+ = (1+i)(p+Ft)/sqrt(F),  z- = (i-1)(p+Ft)/sqrt(F),
// solving  psi'' + ((p + F t)^2 + M^2) psi = 0.
// The coefficients project the Gaussian initial state onto the two mode
// functions: c+- ~ g(p) conj(D_{nu+-}(z+-(0))) with the Gaussian factor
// g(p) = exp(-sigma0^2 (p-p0)^2 / 2 - i (p-p0) x0). The normalized
// projection divides by |D+(0)|^2 + |D-(0)|^2 so that psi_p(0) = g(p)
// exactly; the literal projection omits that factor.

#include <vector>

#include "relwave/kinematics.hpp"
#include "relwave/slices.hpp"
#include "relwave/specfun.hpp"
#include "relwave/spectral.hpp"

namespace relwave {

enum class Projection { normalized, literal };

struct FieldPacketConfig {
  double sigma0 = 1.0;
  double p0 = 0.0;
  double x0 = 0.0;
  double force = 0.1;  // F = q E
  double mass = 1.0;   // transverse mass M, at least m
  PhysParams params{};
  Projection projection = Projection::normalized;
};

// c_plus and c_minus are mantissas; the coefficients are value * e^{log_scale}.
struct ModeCoefficients {
  double p_x = 0.0;
  Complex c_plus{};
  Complex c_minus{};
  double log_scale = 0.0;
};

// The two mode functions of one momentum at time t (t-derivatives included).
struct ModeBasis {
  specfun::PcfValue plus;   // D_{nu+}(z+(t)), d/dt D_{nu+}(z+(t))
  specfun::PcfValue minus;  // same for nu-, z-
};

struct FieldGridOptions {
  double period = 256.0;
  double half_width = 12.0;  // units of 1/sigma0
};

class FieldPacket {
 public:
  explicit FieldPacket(FieldPacketConfig cfg, FieldGridOptions grid = {});

  ModeCoefficients mode_coeffs(double p_x) const;
  ModeBasis mode_basis(double t, double p_x) const;
  // (psi_p, dpsi_p/dt) without the normalization constant.
  PsiValue mode_psi(double t, double p_x) const;

  PsiValue at(double t, double x) const;
  WaveSlice slice(double t, const simd::UniformGrid& grid, int threads = 1) const;

  // Gaussian factor g(p) of the projection.
  Complex gauss_factor(double p_x) const;
  // Psi(0, x) of the initial Gaussian, phase p0 (x - x0).
  Complex initial(double x) const;
  // max |psi_p(0) / g(p) / r_ref - 1| over n points of [lo, hi].
  double constancy_residual(double lo, double hi, int n) const;

  // Psi = normalization() * phase() * sum_p w_p e^{i p x} psi_p(t).
  double normalization() const noexcept { return norm_; }
  Complex phase() const noexcept { return phase_; }
  const FieldMotion& motion() const noexcept { return motion_; }
  const FieldPacketConfig& config() const noexcept { return cfg_; }
  const std::vector<double>& momenta() const noexcept { return nodes_; }
  double spacing() const noexcept { return dp_; }
  double period() const noexcept;

 private:
  // Values at the mirrored problem (F > 0) for momentum p' = sign * p.
  ModeCoefficients coeffs_positive(double pp) const;
  ModeBasis basis_positive(double t, double pp) const;
  PsiValue combine(const ModeCoefficients& c, const ModeBasis& b) const;
  void mode_values(double t, std::vector<PsiValue>& out, int threads) const;

  FieldPacketConfig cfg_;
  FieldMotion motion_;
  double sign_;   // sign of F
  double f_;      // |F|
  double sqrt_f_;
  specfun::PcfOrder nu_plus_, nu_minus_;
  double dp_ = 0.0;
  std::vector<double> nodes_;    // canonical momenta in the physical frame
  std::vector<double> weights_;  // trapezoid weights
  std::vector<ModeCoefficients> coeffs_;
  double norm_ = 1.0;
  Complex phase_{1.0, 0.0};
};

}  // namespace relwave
