#include "relwave/spectral.hpp"

#include <cmath>
#include <numbers>

#include "relwave/errors.hpp"

namespace relwave {

double energy(double p, const PhysParams& pp) noexcept {
  return pp.c * std::hypot(pp.m * pp.c, p);
}

SpectralPacket::SpectralPacket(PhysParams params, ModeKind kind, double dp,
                               std::vector<double> momenta,
                               std::vector<Complex> amplitudes,
                               std::vector<double> energies)
    : pp_(params), kind_(kind), dp_(dp), p_(std::move(momenta)),
      a_(std::move(amplitudes)), e_(std::move(energies)) {
  if (!(dp_ > 0.0)) throw DomainError("spectral packet needs a positive grid spacing");
  if (p_.size() != a_.size() || p_.size() != e_.size())
    throw DomainError("spectral packet arrays must have equal length");
}

PsiValue SpectralPacket::at(double t, double x) const {
  const double ih = 1.0 / pp_.hbar;
  PsiValue out;
  for (std::size_t k = 0; k < p_.size(); ++k) {
    const Complex u = a_[k] * std::polar(1.0, (p_[k] * x - e_[k] * t) * ih);
    out.psi += u;
    out.dpsi_dt += Complex(0.0, -e_[k] * ih) * u;
  }
  return out;
}

WaveSlice SpectralPacket::slice(double t, const simd::UniformGrid& grid,
                                int threads) const {
  const double ih = 1.0 / pp_.hbar;
  std::vector<Complex> a(p_.size()), b(p_.size());
  for (std::size_t k = 0; k < p_.size(); ++k) {
    a[k] = a_[k] * std::polar(1.0, -e_[k] * t * ih);
    b[k] = Complex(0.0, -e_[k] * ih) * a[k];
  }
  return synthesize_slice(t, p_, a, b, grid, pp_.hbar, threads);
}

double SpectralPacket::norm() const {
  double s = 0.0;
  for (const Complex& a : a_) s += std::norm(a);
  return period() * s;
}

double SpectralPacket::period() const noexcept {
  return 2.0 * std::numbers::pi * pp_.hbar / dp_;
}

void SpectralPacket::scale(double factor) {
  for (Complex& a : a_) a *= factor;
}

WaveSlice synthesize_slice(double t, const std::vector<double>& momenta,
                           const std::vector<Complex>& a, const std::vector<Complex>& b,
                           const simd::UniformGrid& grid, double hbar, int threads) {
  simd::ModeSet modes;
  modes.reserve(momenta.size(), true);
  for (std::size_t k = 0; k < momenta.size(); ++k) modes.push(momenta[k], a[k], b[k]);
  simd::SynthesisOutput out = simd::synthesize(modes, grid, 1.0 / hbar, threads);
  WaveSlice s;
  s.t = t;
  s.xs = grid_points(grid);
  s.psi = std::move(out.a);
  s.dpsi_dt = std::move(out.b);
  return s;
}

int symmetric_node_count(double half_width, double dp) {
  if (!(half_width > 0.0) || !(dp > 0.0))
    throw DomainError("momentum window and spacing must be positive");
  const double k = std::ceil(half_width / dp - 1e-9);
  if (k > 5e6) throw DomainError("momentum grid too large; increase the spacing");
  return 2 * static_cast<int>(k) + 1;
}

}  // namespace relwave
