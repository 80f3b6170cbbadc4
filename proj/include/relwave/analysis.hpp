#pragma once

// Observables on sampled slices: charge density, Gaussianity scores with
// best-fit widths, momentum spectra, moments, peaks and phase along a
// worldline.

#include <functional>
#include <vector>

#include "relwave/kinematics.hpp"
#include "relwave/slices.hpp"

namespace relwave::analysis {

// Scalar potential A0(t, x); an empty function means A0 = 0.
using Potential = std::function<double(double t, double x)>;

// rho = (q / m c^2) Re[Psi* (i hbar dPsi/dt - q A0 Psi)].
DensitySlice charge_density(const WaveSlice& slice, const PhysParams& params,
                            const Potential& a0 = {});

// Integral of rho (trapezoid).
double total_charge(const DensitySlice& density);

struct SigmaOptimum {
  double sigma = 0.0;
  double value = 0.0;
};

struct SigmaSearch {
  int scan_points = 64;
  double rel_tol = 1e-7;
};

// Maximizes objective on [lo, hi]: log-spaced scan, golden section on the
// bracketing cell, a parabolic step through the final triple and a few
// Newton steps on finite-difference derivatives. Throws
// BracketError when the scan maximum lies on either end.
SigmaOptimum best_sigma(const std::function<double(double)>& objective, double lo,
                        double hi, SigmaSearch search = {});

struct GaussFitResult {
  double score = 0.0;
  double sigma_star = 0.0;
  double imag_residual = 0.0;
};

// max_sigma |int phi_G* Psi dx|^2 with
//   phi_G = (sigma sqrt(pi))^{-1/2} exp(-(x - xbar)^2 / (2 sigma^2) + i pbar x / hbar).
// Psi is normalized to unit L2 norm over the slice first. The width search
// runs over [dx, L/2].
GaussFitResult gauss_similarity_psi(const WaveSlice& slice, double xbar, double pbar,
                                    const PhysParams& params);

// max_sigma Re int sqrt(rho_G rho) dx / sqrt(int |rho| dx),
//   rho_G = (sigma sqrt(pi))^{-1} exp(-(x - xbar)^2 / sigma^2),
// principal square root where rho < 0; imag_residual is the magnitude of
// the imaginary part at the optimum.
GaussFitResult gauss_similarity_rho(const DensitySlice& density, double xbar);

struct MomentumSpectrum {
  double t = 0.0;
  std::vector<double> p;
  std::vector<double> rho_tilde;
  double boundary_psi = 0.0;  // max |Psi| at the two slice ends
  bool boundary_ok = true;    // boundary_psi < 1e-8 * max |Psi|
};

// rho~(p) = |int dx e^{-i p x / hbar} Psi(t, x) / sqrt(2 pi hbar)|^2 on
// n_p uniform momenta in [p_lo, p_hi].
MomentumSpectrum momentum_spectrum(const WaveSlice& slice, const PhysParams& params,
                                   double p_lo, double p_hi, std::size_t n_p,
                                   int threads = 1);

// Trapezoid integral of a sampled spectrum.
double spectrum_mass(const MomentumSpectrum& spectrum);
// Integral of |Psi|^2 over the slice.
double l2_norm_squared(const WaveSlice& slice);

// First moment of the density (signed weights) or of |Psi|^2.
double expectation_x(const DensitySlice& density);
double expectation_x(const WaveSlice& slice);

struct Peak {
  double x = 0.0;
  double height = 0.0;
  double prominence = 0.0;
};

// Local maxima whose topographic prominence is at least
// min_prominence * (max rho), sorted by x.
std::vector<Peak> find_peaks(const DensitySlice& density, double min_prominence = 0.05);

struct PhaseTrace {
  std::vector<double> ts;
  std::vector<double> phi;
  std::vector<double> s_cl;  // S_cl / hbar
  std::vector<double> offset;
};

using PsiAt = std::function<Complex(double t, double x)>;
using Worldline = std::function<double(double t)>;
using Action = std::function<double(double t)>;

// Unwrapped phase of Psi(t, xbar(t)) on ts (increasing). The branch of each
// increment follows the phase rate carried over from the previous interval,
// so a step may span several turns as long as the rate varies smoothly.
// Intervals whose halves disagree are bisected; throws EvaluationError when
// that fails after max_depth halvings. phi starts from the principal
// argument at ts[0].
PhaseTrace phase_trace(const PsiAt& psi, const Worldline& xbar, const Action& action,
                       const std::vector<double>& ts, double hbar, int max_depth = 30);

}  // namespace relwave::analysis
