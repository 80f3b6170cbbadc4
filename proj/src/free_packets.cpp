#include "relwave/free_packets.hpp"

#include <cmath>
#include <numbers>

#include "relwave/errors.hpp"
#include "relwave/quadrature.hpp"
#include "relwave/specfun.hpp"

namespace relwave {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

}  // namespace

double w_of_p(double p, const FreeMotion& motion) noexcept {
  return energy(p, motion.params()) - p * motion.v0();
}

ClosedPacket::ClosedPacket(ClosedPacketConfig cfg) : cfg_(cfg) {
  if (!(cfg_.theta > 0.0)) throw DomainError("closed packet requires theta > 0");
  const PhysParams& pp = cfg_.motion.params();
  const double g0 = cfg_.motion.gamma0();
  // |N|^2 = 1 / (4 pi hbar m c gamma0 K1(2 m c^2 theta / (hbar gamma0))).
  const double z = 2.0 * pp.rest_energy() * cfg_.theta / (pp.hbar * g0);
  const double k1s = specfun::bessel_k1_scaled(z).real();
  log_norm_ = -0.5 * (std::log(4.0 * kPi * pp.hbar * pp.m * pp.c * g0) + std::log(k1s) - z);
}

ClosedEval ClosedPacket::evaluate(double t, double x) const {
  const PhysParams& pp = cfg_.motion.params();
  const double mc = pp.m * pp.c;
  const double k = pp.rest_energy() / pp.hbar;
  // Exponent of a mode in the rapidity variable: -a cosh(k) + b sinh(k).
  const Complex a = k * Complex(cfg_.theta, t);
  const Complex b = (mc / pp.hbar) * Complex(cfg_.theta * cfg_.motion.v0(), x - cfg_.motion.x0());
  const Complex u2 = a * a - b * b;
  ClosedEval out;
  if (std::fabs(std::arg(u2)) > kPi - 1e-8 || u2 == 0.0) {
    out = quadrature(t, x);
    out.branch_flag = true;
    return out;
  }
  const Complex w = std::sqrt(u2);
  const auto ks = specfun::bessel_k012_scaled(w);
  const Complex pref = std::exp(log_norm_ - w) * mc;
  const Complex r = a / w;
  out.value.psi = pref * 2.0 * r * ks[1];
  out.value.dpsi_dt = -kI * k * pref * (ks[2] * (2.0 * r * r - 1.0) + ks[0]);
  return out;
}

ClosedEval ClosedPacket::quadrature(double t, double x) const {
  const PhysParams& pp = cfg_.motion.params();
  const double ih = 1.0 / pp.hbar;
  const double p0 = cfg_.motion.p0();
  auto mode = [&](double p) {
    const double e = energy(p, pp);
    const double decay = log_norm_ - cfg_.theta * w_of_p(p, cfg_.motion) * ih;
    return std::exp(Complex(decay, (p * (x - cfg_.motion.x0()) - e * t) * ih));
  };
  const double scale = pp.m * pp.c;
  const auto psi = quad::integrate_whole_line(mode, p0, scale, 1e-12);
  const auto dpsi = quad::integrate_whole_line(
      [&](double p) { return Complex(0.0, -energy(p, pp) * ih) * mode(p); }, p0, scale,
      1e-12);
  ClosedEval out;
  out.value.psi = psi.value;
  out.value.dpsi_dt = dpsi.value;
  out.fallback = true;
  out.converged = psi.converged && dpsi.converged;
  return out;
}

double ClosedPacket::spectrum(double p) const {
  const PhysParams& pp = cfg_.motion.params();
  return 2.0 * kPi * pp.hbar *
         std::exp(2.0 * log_norm_ - 2.0 * cfg_.theta * w_of_p(p, cfg_.motion) / pp.hbar);
}

WaveSlice ClosedPacket::slice(double t, const simd::UniformGrid& grid, int threads,
                              int* flagged) const {
  (void)threads;  // pointwise evaluation; callers parallelize over slices
  WaveSlice s;
  s.t = t;
  s.xs = grid_points(grid);
  s.psi.resize(grid.n);
  s.dpsi_dt.resize(grid.n);
  int count = 0;
  for (std::size_t j = 0; j < grid.n; ++j) {
    const ClosedEval e = evaluate(t, s.xs[j]);
    s.psi[j] = e.value.psi;
    s.dpsi_dt[j] = e.value.dpsi_dt;
    count += e.branch_flag ? 1 : 0;
  }
  if (flagged) *flagged = count;
  return s;
}

ClosedEval psi_closed(double t, double x, const ClosedPacketConfig& cfg) {
  return ClosedPacket(cfg).evaluate(t, x);
}

double spectrum_closed(double p, const ClosedPacketConfig& cfg) {
  return ClosedPacket(cfg).spectrum(p);
}

namespace {

SpectralPacket build_gauss(const GaussianPacketConfig& cfg, const GaussGridOptions& opt,
                           double& tail) {
  const PhysParams& pp = cfg.params;
  pp.validate();
  if (!(cfg.sigma0 > 0.0)) throw DomainError("Gaussian packet requires sigma0 > 0");
  if (!(opt.period > 0.0) || !(opt.half_width > 0.0))
    throw DomainError("Gaussian grid options must be positive");
  const double dp = 2.0 * kPi * pp.hbar / opt.period;
  const double hw = opt.half_width * pp.hbar / cfg.sigma0;
  const int n = symmetric_node_count(hw, dp);
  const quad::Grid g = quad::momentum_grid(cfg.p0, 0.5 * (n - 1) * dp, n);
  const double pref = std::sqrt(cfg.sigma0) / (pp.hbar * std::sqrt(2.0 * std::pow(kPi, 1.5)));
  std::vector<Complex> a(n);
  std::vector<double> e(n);
  for (int k = 0; k < n; ++k) {
    const double p = g.nodes[k];
    const double u = cfg.sigma0 * (p - cfg.p0) / pp.hbar;
    a[k] = g.weights[k] * pref * std::polar(std::exp(-0.5 * u * u), -p * cfg.x0 / pp.hbar);
    e[k] = energy(p, pp);
  }
  // Spectral mass beyond |u| = half_width relative to the total.
  tail = std::erfc(opt.half_width);
  return SpectralPacket(pp, ModeKind::plane_wave, dp, g.nodes, std::move(a), std::move(e));
}

}  // namespace

GaussPacket::GaussPacket(GaussianPacketConfig cfg, GaussGridOptions grid)
    : cfg_(cfg), spectral_(build_gauss(cfg, grid, tail_)) {}

Complex GaussPacket::amplitude(double p) const {
  const PhysParams& pp = cfg_.params;
  const double pref =
      std::sqrt(cfg_.sigma0) / (pp.hbar * std::sqrt(2.0 * std::pow(kPi, 1.5)));
  const double u = cfg_.sigma0 * (p - cfg_.p0) / pp.hbar;
  return pref * std::polar(std::exp(-0.5 * u * u), -p * cfg_.x0 / pp.hbar);
}

Complex GaussPacket::initial(double x) const {
  const double s = cfg_.sigma0;
  const double d = x - cfg_.x0;
  return std::polar(std::exp(-0.5 * d * d / (s * s)) / std::sqrt(s * std::sqrt(kPi)),
                    cfg_.p0 * d / cfg_.params.hbar);
}

double GaussPacket::suppression_ratio() const {
  const double mc = cfg_.params.m * cfg_.params.c;
  return std::norm(amplitude(-mc)) / std::norm(amplitude(cfg_.p0));
}

PsiValue psi_gauss_free(double t, double x, const GaussianPacketConfig& cfg) {
  return GaussPacket(cfg).at(t, x);
}

}  // namespace relwave
