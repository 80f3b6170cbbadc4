#pragma once

// Free-particle wavepackets.
//
// Closed family: spectrum psi~(p) = N exp(-theta W(p) / hbar) with
//   W(p) = m c^2 sqrt(1 + (p/mc)^2) - p v0,
// summed in closed form through K_1. Gaussian family: Gaussian spectrum
// centred at p0 propagated with positive-energy plane waves.

#include <optional>

#include "relwave/kinematics.hpp"
#include "relwave/slices.hpp"
#include "relwave/spectral.hpp"

namespace relwave {

double w_of_p(double p, const FreeMotion& motion) noexcept;

struct ClosedPacketConfig {
  double theta = 1.0;  // width parameter (time units)
  FreeMotion motion{0.0, 0.0};
};

struct ClosedEval {
  PsiValue value;
  bool branch_flag = false;  // principal root of F^2 was ambiguous
  bool fallback = false;     // value came from momentum quadrature
  bool converged = true;
};

class ClosedPacket {
 public:
  explicit ClosedPacket(ClosedPacketConfig cfg);

  // Closed form; falls back to quadrature when the branch test fails.
  ClosedEval evaluate(double t, double x) const;
  PsiValue psi(double t, double x) const { return evaluate(t, x).value; }
  // Direct momentum quadrature of the mode sum (sinh-mapped trapezoid).
  ClosedEval quadrature(double t, double x) const;

  // rho~(p) = 2 pi hbar |N|^2 exp(-2 theta W(p)/hbar); time independent.
  double spectrum(double p) const;
  double log_norm() const noexcept { return log_norm_; }  // log N (N real)

  WaveSlice slice(double t, const simd::UniformGrid& grid, int threads = 1,
                  int* flagged = nullptr) const;

  const ClosedPacketConfig& config() const noexcept { return cfg_; }

 private:
  ClosedPacketConfig cfg_;
  double log_norm_;
};

ClosedEval psi_closed(double t, double x, const ClosedPacketConfig& cfg);
double spectrum_closed(double p, const ClosedPacketConfig& cfg);

struct GaussianPacketConfig {
  double sigma0 = 1.0;
  double p0 = 0.0;
  double x0 = 0.0;
  PhysParams params{};
};

struct GaussGridOptions {
  double period = 256.0;     // x-period of the discrete mode sum (length)
  double half_width = 12.0;  // momentum window in units of hbar / sigma0
};

class GaussPacket {
 public:
  explicit GaussPacket(GaussianPacketConfig cfg, GaussGridOptions grid = {});

  // psi~(p) = sqrt(sigma0)/(hbar sqrt(2 pi^{3/2}))
  //           exp(-sigma0^2 (p - p0)^2 / (2 hbar^2) - i p x0 / hbar).
  Complex amplitude(double p) const;
  // Psi(0, x) by construction.
  Complex initial(double x) const;
  // |psi~(-m c)|^2 / |psi~(p0)|^2.
  double suppression_ratio() const;

  PsiValue at(double t, double x) const { return spectral_.at(t, x); }
  WaveSlice slice(double t, const simd::UniformGrid& grid, int threads = 1) const {
    return spectral_.slice(t, grid, threads);
  }
  const SpectralPacket& spectral() const noexcept { return spectral_; }
  const GaussianPacketConfig& config() const noexcept { return cfg_; }
  // Relative spectral mass outside the momentum window.
  double tail_bound() const noexcept { return tail_; }

 private:
  GaussianPacketConfig cfg_;
  SpectralPacket spectral_;
  double tail_;
};

PsiValue psi_gauss_free(double t, double x, const GaussianPacketConfig& cfg);

}  // namespace relwave
