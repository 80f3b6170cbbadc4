#include "relwave/slices.hpp"

#include <cmath>

#include "relwave/errors.hpp"

namespace relwave {

namespace {

void check_increasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw DomainError("slice grid must be strictly increasing");
}

}  // namespace

void WaveSlice::validate() const {
  if (xs.size() < 2) throw DomainError("slice needs at least two grid points");
  if (psi.size() != xs.size() || dpsi_dt.size() != xs.size())
    throw DomainError("slice arrays must match the grid length");
  check_increasing(xs);
}

double WaveSlice::spacing() const {
  validate();
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (std::fabs(xs[i] - xs[i - 1] - h) > 1e-9 * h)
      throw DomainError("slice grid is not uniform");
  return h;
}

void DensitySlice::validate() const {
  if (xs.size() < 2) throw DomainError("density needs at least two grid points");
  if (rho.size() != xs.size()) throw DomainError("density array must match the grid length");
  check_increasing(xs);
}

std::vector<double> grid_points(const simd::UniformGrid& grid) {
  std::vector<double> xs(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) xs[j] = grid.at(j);
  return xs;
}

simd::UniformGrid uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) throw DomainError("uniform grid needs n >= 2 and hi > lo");
  return {lo, (hi - lo) / static_cast<double>(n - 1), n};
}

}  // namespace relwave
