#include "relwave/field_packets.hpp"

#include <cmath>
#include <numbers>
#include <exception>
#include <mutex>
#include <thread>

#include "relwave/errors.hpp"
#include "relwave/quadrature.hpp"

namespace relwave {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

FieldMotion make_motion(const FieldPacketConfig& cfg) {
  const PhysParams& pp = cfg.params;
  pp.validate();
  if (pp.c != 1.0 || pp.hbar != 1.0)
    throw DomainError("field packets are formulated with c = hbar = 1");
  if (!(cfg.sigma0 > 0.0)) throw DomainError("field packet requires sigma0 > 0");
  if (cfg.force == 0.0 || !std::isfinite(cfg.force))
    throw DomainError("field packet requires a finite nonzero force");
  if (!(cfg.mass >= pp.m)) throw DomainError("transverse mass must satisfy M >= m");
  return FieldMotion(cfg.force, cfg.p0, cfg.x0, pp);
}

template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(threads > 0 ? threads : 1, n / 64 + 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex m;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = n * w / workers; i < n * (w + 1) / workers; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

FieldPacket::FieldPacket(FieldPacketConfig cfg, FieldGridOptions grid)
    : cfg_(cfg),
      motion_(make_motion(cfg)),
      sign_(cfg.force > 0.0 ? 1.0 : -1.0),
      f_(std::fabs(cfg.force)),
      sqrt_f_(std::sqrt(std::fabs(cfg.force))),
      nu_plus_(specfun::PcfOrder::for_field_mode(cfg.mass * cfg.mass, f_, +1)),
      nu_minus_(specfun::PcfOrder::for_field_mode(cfg.mass * cfg.mass, f_, -1)) {
  if (!(grid.period > 0.0) || !(grid.half_width > 0.0))
    throw DomainError("field grid options must be positive");
  dp_ = 2.0 * kPi / grid.period;
  const int n = symmetric_node_count(grid.half_width / cfg_.sigma0, dp_);
  const quad::Grid g = quad::momentum_grid(cfg_.p0, 0.5 * (n - 1) * dp_, n);
  nodes_ = g.nodes;
  weights_ = g.weights;
  coeffs_.resize(n);
  parallel_for(static_cast<std::size_t>(n), 1,
               [&](std::size_t k) { coeffs_[k] = mode_coeffs(nodes_[k]); });
  std::vector<PsiValue> v;
  mode_values(0.0, v, 1);
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += std::norm(weights_[k] * v[k].psi);
  norm_ = 1.0 / std::sqrt(period() * s);
  // g(p) differs from the spectrum of the initial Gaussian by e^{i p0 x0};
  // the phase of the normalization constant removes it.
  phase_ = std::polar(1.0, -cfg_.p0 * cfg_.x0);
}

double FieldPacket::period() const noexcept { return 2.0 * kPi / dp_; }

Complex FieldPacket::gauss_factor(double p) const {
  const double u = cfg_.sigma0 * (p - cfg_.p0);
  return std::polar(std::exp(-0.5 * u * u), -(p - cfg_.p0) * cfg_.x0);
}

Complex FieldPacket::initial(double x) const {
  const double s = cfg_.sigma0;
  const double d = x - cfg_.x0;
  return std::polar(std::exp(-0.5 * d * d / (s * s)) / std::sqrt(s * std::sqrt(kPi)),
                    cfg_.p0 * d);
}

ModeBasis FieldPacket::basis_positive(double t, double pp) const {
  const double s = (pp + f_ * t) / sqrt_f_;
  const Complex zp = Complex(1.0, 1.0) * s;
  const Complex zm = Complex(-1.0, 1.0) * s;
  ModeBasis b;
  b.plus = specfun::pcf_d_scaled(nu_plus_.value(), zp);
  b.minus = specfun::pcf_d_scaled(nu_minus_.value(), zm);
  b.plus.derivative *= Complex(1.0, 1.0) * sqrt_f_;
  b.minus.derivative *= Complex(-1.0, 1.0) * sqrt_f_;
  return b;
}

ModeCoefficients FieldPacket::coeffs_positive(double pp) const {
  const ModeBasis b = basis_positive(0.0, pp);
  const double l = std::max(b.plus.log_scale, b.minus.log_scale);
  const Complex vp = b.plus.value * std::exp(b.plus.log_scale - l);
  const Complex vm = b.minus.value * std::exp(b.minus.log_scale - l);
  // Mirrored momentum pp corresponds to the physical p = sign * pp; the
  // Gaussian factor is evaluated in the mirrored frame.
  const double u = cfg_.sigma0 * (pp - sign_ * cfg_.p0);
  const Complex g = std::polar(std::exp(-0.5 * u * u), -(pp - sign_ * cfg_.p0) * sign_ * cfg_.x0);
  ModeCoefficients c;
  c.p_x = sign_ * pp;
  if (cfg_.projection == Projection::normalized) {
    const double sum = std::norm(vp) + std::norm(vm);
    c.c_plus = g * std::conj(vp) / sum;
    c.c_minus = g * std::conj(vm) / sum;
    c.log_scale = -l;
  } else {
    c.c_plus = g * std::conj(vp);
    c.c_minus = g * std::conj(vm);
    c.log_scale = l;
  }
  return c;
}

ModeCoefficients FieldPacket::mode_coeffs(double p_x) const {
  return coeffs_positive(sign_ * p_x);
}

ModeBasis FieldPacket::mode_basis(double t, double p_x) const {
  return basis_positive(t, sign_ * p_x);
}

PsiValue FieldPacket::combine(const ModeCoefficients& c, const ModeBasis& b) const {
  const Complex wp = std::exp(c.log_scale + b.plus.log_scale) * c.c_plus;
  const Complex wm = std::exp(c.log_scale + b.minus.log_scale) * c.c_minus;
  PsiValue v;
  v.psi = wp * b.plus.value + wm * b.minus.value;
  v.dpsi_dt = wp * b.plus.derivative + wm * b.minus.derivative;
  return v;
}

PsiValue FieldPacket::mode_psi(double t, double p_x) const {
  return combine(mode_coeffs(p_x), mode_basis(t, p_x));
}

void FieldPacket::mode_values(double t, std::vector<PsiValue>& out, int threads) const {
  out.resize(nodes_.size());
  parallel_for(nodes_.size(), threads, [&](std::size_t k) {
    out[k] = combine(coeffs_[k], mode_basis(t, nodes_[k]));
  });
}

PsiValue FieldPacket::at(double t, double x) const {
  std::vector<PsiValue> v;
  mode_values(t, v, 1);
  PsiValue out;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const Complex e = (weights_[k] * norm_) * phase_ * std::polar(1.0, nodes_[k] * x);
    out.psi += e * v[k].psi;
    out.dpsi_dt += e * v[k].dpsi_dt;
  }
  return out;
}

WaveSlice FieldPacket::slice(double t, const simd::UniformGrid& grid, int threads) const {
  std::vector<PsiValue> v;
  mode_values(t, v, threads);
  std::vector<Complex> a(nodes_.size()), b(nodes_.size());
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    a[k] = weights_[k] * norm_ * phase_ * v[k].psi;
    b[k] = weights_[k] * norm_ * phase_ * v[k].dpsi_dt;
  }
  return synthesize_slice(t, nodes_, a, b, grid, 1.0, threads);
}

double FieldPacket::constancy_residual(double lo, double hi, int n) const {
  if (n < 2) throw DomainError("constancy test needs at least two momenta");
  std::vector<Complex> r(n);
  for (int i = 0; i < n; ++i) {
    const double p = lo + (hi - lo) * i / (n - 1);
    r[i] = mode_psi(0.0, p).psi / gauss_factor(p);
  }
  const Complex ref = r[n / 2];
  double worst = 0.0;
  for (const Complex& v : r) worst = std::max(worst, std::abs(v / ref - 1.0));
  return worst;
}

}  // namespace relwave
