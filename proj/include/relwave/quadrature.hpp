#pragma once

// One-dimensional trapezoid quadrature for complex integrands.
//
// Every integral in the library goes through integrate_complex(). The base
// rule is the composite trapezoid rule applied after an optional change of
// variables; for the analytic, exponentially decaying integrands used here
// it converges exponentially in the node count. Infinite ranges are summed
// outward from the origin of the substituted variable and truncated only
// once the terms have fallen below tail_tol of the running sum; the size of
// the discarded tail is reported in QuadResult::tail_bound.

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace relwave::quad {

using Complex = std::complex<double>;
using Integrand = std::function<Complex(double)>;

enum class DomainKind {
  finite,      // [lower, upper]
  whole_line,  // (-inf, inf), substitution centred on `lower`
  half_line,   // [lower, inf)
};

enum class Substitution {
  identity,        // x = s
  linear_rescale,  // x = lower + scale * s
  sinh_map,        // x = lower + scale * sinh(s)
  tanh_sinh,       // finite only: x = mid + half * tanh(pi/2 sinh s)
};

enum class Refinement { none, doubling };

struct QuadratureSpec {
  DomainKind domain = DomainKind::finite;
  double lower = 0.0;
  double upper = 1.0;
  Substitution substitution = Substitution::identity;
  double scale = 1.0;

  // Finite identity/linear rules: initial node count including both ends.
  // Other rules: the initial step in the substituted variable is
  // `step` when positive, otherwise 1 / node_count.
  int node_count = 16;
  double step = 0.0;

  Refinement refinement = Refinement::doubling;
  double abs_tol = 0.0;
  double rel_tol = 1e-12;
  int max_nodes = 1 << 20;
  int min_levels = 1;  // doubling levels always performed before testing

  // Outward summation on unbounded substituted ranges stops after
  // `tail_run` consecutive terms below tail_tol * |running sum|.
  double tail_tol = 1e-18;
  int tail_run = 3;

  void validate() const;
  std::string describe() const;
};

struct QuadResult {
  Complex value{};
  double error = 0.0;       // |T_h - T_{2h}|, or 0 for a fixed rule
  double tail_bound = 0.0;  // magnitude of the truncated terms (last level)
  bool converged = true;
  int nodes = 0;            // integrand evaluations
  int levels = 0;
};

QuadResult integrate_complex(const Integrand& f, const QuadratureSpec& spec);

// Same rule for a vector of integrands sharing nodes; convergence and tail
// tests use the largest component magnitude.
template <std::size_t N>
struct QuadResultN {
  std::array<Complex, N> value{};
  double error = 0.0;
  double tail_bound = 0.0;
  bool converged = true;
  int nodes = 0;
  int levels = 0;
};

template <std::size_t N>
QuadResultN<N> integrate_complex_n(
    const std::function<std::array<Complex, N>(double)>& f,
    const QuadratureSpec& spec);

extern template QuadResultN<3> integrate_complex_n<3>(
    const std::function<std::array<Complex, 3>(double)>&, const QuadratureSpec&);

// Convenience wrappers for the common shapes.
QuadResult integrate_finite(const Integrand& f, double a, double b,
                            double rel_tol = 1e-12);
QuadResult integrate_whole_line(const Integrand& f, double center,
                                double scale, double rel_tol = 1e-12);

// Uniform trapezoid nodes and weights.
struct Grid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double spacing = 0.0;
};

// Symmetric uniform grid on [center - half_width, center + half_width].
// Weights follow the trapezoid convention and sum to 2 * half_width.
Grid momentum_grid(double center, double half_width, int node_count);

// Trapezoid weights for an existing uniform grid.
std::vector<double> trapezoid_weights(int count, double spacing);

}  // namespace relwave::quad
