#pragma once

// A wavefunction held as weighted plane-wave modes on a uniform momentum
// grid:  Psi(t, x) = sum_k a_k exp(i (p_k x - E_k t) / hbar).
// The grid spacing dp makes the representation periodic in x with period
// 2 pi hbar / dp; callers choose dp so that the images stay far outside
// the region being sampled.

#include <vector>

#include "relwave/kinematics.hpp"
#include "relwave/slices.hpp"

namespace relwave {

enum class ModeKind { closed_ansatz, plane_wave, field_mode };

class SpectralPacket {
 public:
  SpectralPacket(PhysParams params, ModeKind kind, double dp,
                 std::vector<double> momenta, std::vector<Complex> amplitudes,
                 std::vector<double> energies);

  PsiValue at(double t, double x) const;
  WaveSlice slice(double t, const simd::UniformGrid& grid, int threads = 1) const;

  // Norm over one period, P sum |a_k|^2 (exact for the periodic sum).
  double norm() const;
  double period() const noexcept;
  void scale(double factor);

  ModeKind kind() const noexcept { return kind_; }
  double spacing() const noexcept { return dp_; }
  const std::vector<double>& momenta() const noexcept { return p_; }
  const std::vector<Complex>& amplitudes() const noexcept { return a_; }
  const std::vector<double>& energies() const noexcept { return e_; }
  const PhysParams& params() const noexcept { return pp_; }

 private:
  PhysParams pp_;
  ModeKind kind_;
  double dp_;
  std::vector<double> p_;
  std::vector<Complex> a_;
  std::vector<double> e_;
};

// E(p) = sqrt(m^2 c^4 + p^2 c^2).
double energy(double p, const PhysParams& params) noexcept;

// Synthesizes sum_k A_k e^{i p_k x/hbar} and sum_k B_k e^{i p_k x/hbar} on a grid.
WaveSlice synthesize_slice(double t, const std::vector<double>& momenta,
                           const std::vector<Complex>& a, const std::vector<Complex>& b,
                           const simd::UniformGrid& grid, double hbar, int threads);

// Smallest uniform spacing-compatible node count: nodes p_center + k dp,
// |k| <= K with K dp >= half_width.
int symmetric_node_count(double half_width, double dp);

}  // namespace relwave
