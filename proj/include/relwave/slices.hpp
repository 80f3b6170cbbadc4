#pragma once

#include <complex>
#include <vector>

#include "relwave/simd/synthesis.hpp"

namespace relwave {

using Complex = std::complex<double>;

// Psi and its time derivative at one (t, x).
struct PsiValue {
  Complex psi{};
  Complex dpsi_dt{};
};

// Psi and dPsi/dt sampled on a strictly increasing grid at fixed t.
struct WaveSlice {
  double t = 0.0;
  std::vector<double> xs;
  std::vector<Complex> psi;
  std::vector<Complex> dpsi_dt;

  void validate() const;  // throws DomainError
  double spacing() const;  // uniform spacing, throws if not uniform
};

// Signed charge density on a grid at fixed t.
struct DensitySlice {
  double t = 0.0;
  std::vector<double> xs;
  std::vector<double> rho;

  void validate() const;
};

std::vector<double> grid_points(const simd::UniformGrid& grid);
simd::UniformGrid uniform_grid(double lo, double hi, std::size_t n);

}  // namespace relwave
