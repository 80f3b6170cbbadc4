#include "relwave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relwave/errors.hpp"
#include "relwave/simd/synthesis.hpp"

namespace relwave::analysis {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

std::vector<double> trapezoid(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double h = 0.5 * (xs[j + 1] - xs[j]);
    w[j] += h;
    w[j + 1] += h;
  }
  return w;
}

void check_bracket(const std::vector<double>& xs, double& lo, double& hi) {
  if (xs.size() < 3) throw DomainError("slice needs at least three points");
  lo = xs[1] - xs[0];
  hi = 0.5 * (xs.back() - xs.front());
}

double finite_or_throw(double v, double sigma) {
  if (!std::isfinite(v)) throw EvaluationError("objective is not finite", sigma);
  return v;
}

}  // namespace

DensitySlice charge_density(const WaveSlice& slice, const PhysParams& params,
                            const Potential& a0) {
  slice.validate();
  DensitySlice d;
  d.t = slice.t;
  d.xs = slice.xs;
  d.rho.resize(slice.xs.size());
  const double pref = params.q / params.rest_energy();
  for (std::size_t j = 0; j < slice.xs.size(); ++j) {
    Complex op = kI * params.hbar * slice.dpsi_dt[j];
    if (a0) op -= params.q * a0(slice.t, slice.xs[j]) * slice.psi[j];
    d.rho[j] = pref * (std::conj(slice.psi[j]) * op).real();
  }
  return d;
}

double total_charge(const DensitySlice& density) {
  density.validate();
  const auto w = trapezoid(density.xs);
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * density.rho[j];
  return s;
}

SigmaOptimum best_sigma(const std::function<double(double)>& objective, double lo,
                        double hi, SigmaSearch search) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
    throw BracketError("sigma bracket must satisfy 0 < lo < hi", lo, hi);
  const int n = std::max(search.scan_points, 5);
  const double ulo = std::log(lo), uhi = std::log(hi);
  auto f = [&](double u) {
    const double s = std::exp(u);
    return finite_or_throw(objective(s), s);
  };

  std::vector<double> us(n), fs(n);
  for (int i = 0; i < n; ++i) {
    us[i] = ulo + (uhi - ulo) * i / (n - 1);
    fs[i] = f(us[i]);
  }
  const int k = static_cast<int>(std::max_element(fs.begin(), fs.end()) - fs.begin());
  if (k == 0 || k == n - 1)
    throw BracketError("no interior maximum of the width objective", lo, hi);

  // Golden section in log sigma, so the tolerance is relative.
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = us[k - 1], b = us[k + 1];
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > search.rel_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  double u = fc >= fd ? c : d;
  double fu = std::max(fc, fd);

  // Parabolic vertex through the last triple.
  const double x1 = a, x2 = u, x3 = b;
  const double f1 = f(x1), f3 = f(x3);
  const double num = (x2 - x1) * (x2 - x1) * (fu - f3) - (x2 - x3) * (x2 - x3) * (fu - f1);
  const double den = (x2 - x1) * (fu - f3) - (x2 - x3) * (fu - f1);
  if (den != 0.0) {
    const double v = x2 - 0.5 * num / den;
    if (v > x1 && v < x3) {
      const double fv = f(v);
      if (fv > fu) {
        u = v;
        fu = fv;
      }
    }
  }
  // Newton polish on central differences; the flat top leaves the golden
  // bracket resolved only to about rel_tol.
  const double du = 1e-4;
  for (int it = 0; it < 3; ++it) {
    const double fp = f(u + du), fm = f(u - du);
    const double fp2 = f(u + 2.0 * du), fm2 = f(u - 2.0 * du);
    const double curv = (fp - 2.0 * fu + fm) / (du * du);
    if (!(curv < 0.0)) break;
    const double slope = (8.0 * (fp - fm) - (fp2 - fm2)) / (12.0 * du);
    const double step = -slope / curv;
    if (!(std::fabs(step) < 1e-3) || !(u + step > ulo) || !(u + step < uhi)) break;
    u += step;
    fu = f(u);
    if (std::fabs(step) < 1e-13) break;
  }
  return {std::exp(u), fu};
}

GaussFitResult gauss_similarity_psi(const WaveSlice& slice, double xbar, double pbar,
                                    const PhysParams& params) {
  slice.validate();
  double lo, hi;
  check_bracket(slice.xs, lo, hi);
  const auto w = trapezoid(slice.xs);
  const std::size_t n = slice.xs.size();
  std::vector<Complex> u(n);
  double mass = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    u[j] = w[j] * slice.psi[j] * std::polar(1.0, -pbar * slice.xs[j] / params.hbar);
    mass += w[j] * std::norm(slice.psi[j]);
  }
  if (!(mass > 0.0)) throw DomainError("slice has zero norm");

  auto overlap = [&](double sigma) {
    const double amp = 1.0 / std::sqrt(sigma * std::sqrt(kPi));
    const double inv = 0.5 / (sigma * sigma);
    Complex s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = slice.xs[j] - xbar;
      const double e = d * d * inv;
      if (e < 700.0) s += std::exp(-e) * u[j];
    }
    return std::norm(amp * s) / mass;
  };
  const SigmaOptimum opt = best_sigma(overlap, lo, hi);
  return {opt.value, opt.sigma, 0.0};
}

GaussFitResult gauss_similarity_rho(const DensitySlice& density, double xbar) {
  density.validate();
  double lo, hi;
  check_bracket(density.xs, lo, hi);
  const auto w = trapezoid(density.xs);
  const std::size_t n = density.xs.size();
  double abs_mass = 0.0;
  for (std::size_t j = 0; j < n; ++j) abs_mass += w[j] * std::fabs(density.rho[j]);
  if (!(abs_mass > 0.0)) throw DomainError("density vanishes identically");
  const double inv_root = 1.0 / std::sqrt(abs_mass);

  auto overlap = [&](double sigma) {
    const double amp = 1.0 / (sigma * std::sqrt(kPi));
    const double inv = 1.0 / (sigma * sigma);
    Complex s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = density.xs[j] - xbar;
      const double e = d * d * inv;
      if (e < 700.0) s += w[j] * std::sqrt(Complex(amp * std::exp(-e) * density.rho[j], 0.0));
    }
    return s * inv_root;
  };
  const SigmaOptimum opt =
      best_sigma([&](double s) { return overlap(s).real(); }, lo, hi);
  return {opt.value, opt.sigma, std::fabs(overlap(opt.sigma).imag())};
}

MomentumSpectrum momentum_spectrum(const WaveSlice& slice, const PhysParams& params,
                                   double p_lo, double p_hi, std::size_t n_p,
                                   int threads) {
  slice.validate();
  if (n_p < 2 || !(p_hi > p_lo)) throw DomainError("momentum grid is empty");
  const auto w = trapezoid(slice.xs);
  const std::size_t n = slice.xs.size();
  const double scale = 1.0 / std::sqrt(2.0 * kPi * params.hbar);

  // Same kernel as the mode synthesis with the roles of x and p exchanged.
  simd::ModeSet modes;
  modes.reserve(n, false);
  double peak = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    modes.push(-slice.xs[j], scale * w[j] * slice.psi[j]);
    peak = std::max(peak, std::abs(slice.psi[j]));
  }
  const simd::UniformGrid pg{p_lo, (p_hi - p_lo) / static_cast<double>(n_p - 1), n_p};
  const auto out = simd::synthesize(modes, pg, 1.0 / params.hbar, threads);

  MomentumSpectrum s;
  s.t = slice.t;
  s.p = grid_points(pg);
  s.rho_tilde.resize(n_p);
  for (std::size_t k = 0; k < n_p; ++k) s.rho_tilde[k] = std::norm(out.a[k]);
  s.boundary_psi = std::max(std::abs(slice.psi.front()), std::abs(slice.psi.back()));
  s.boundary_ok = s.boundary_psi < 1e-8 * peak;
  return s;
}

double spectrum_mass(const MomentumSpectrum& spectrum) {
  const auto w = trapezoid(spectrum.p);
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * spectrum.rho_tilde[k];
  return s;
}

double l2_norm_squared(const WaveSlice& slice) {
  slice.validate();
  const auto w = trapezoid(slice.xs);
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * std::norm(slice.psi[j]);
  return s;
}

namespace {

double first_moment(const std::vector<double>& xs, const std::vector<double>& weight) {
  const auto w = trapezoid(xs);
  double m0 = 0.0, m1 = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    m0 += w[j] * weight[j];
    m1 += w[j] * weight[j] * xs[j];
  }
  if (m0 == 0.0 || !std::isfinite(m0)) throw DomainError("weights have zero total");
  return m1 / m0;
}

}  // namespace

double expectation_x(const DensitySlice& density) {
  density.validate();
  return first_moment(density.xs, density.rho);
}

double expectation_x(const WaveSlice& slice) {
  slice.validate();
  std::vector<double> m(slice.psi.size());
  for (std::size_t j = 0; j < m.size(); ++j) m[j] = std::norm(slice.psi[j]);
  return first_moment(slice.xs, m);
}

std::vector<Peak> find_peaks(const DensitySlice& density, double min_prominence) {
  density.validate();
  const auto& r = density.rho;
  const std::size_t n = r.size();
  std::vector<Peak> peaks;
  if (n < 3) return peaks;
  const double top = *std::max_element(r.begin(), r.end());
  if (!(top > 0.0)) return peaks;
  const double threshold = min_prominence * top;

  std::size_t i = 1;
  while (i + 1 < n) {
    if (!(r[i] > r[i - 1])) {
      ++i;
      continue;
    }
    // Walk over a plateau.
    std::size_t j = i;
    while (j + 1 < n && r[j + 1] == r[i]) ++j;
    if (j + 1 >= n || !(r[j + 1] < r[i])) {
      i = j + 1;
      continue;
    }
    const double h = r[i];
    double left = h;
    for (std::size_t k = i; k-- > 0;) {
      if (r[k] > h) break;
      left = std::min(left, r[k]);
    }
    double right = h;
    for (std::size_t k = j + 1; k < n; ++k) {
      if (r[k] > h) break;
      right = std::min(right, r[k]);
    }
    const double prom = h - std::max(left, right);
    if (prom >= threshold) {
      const std::size_t mid = (i + j) / 2;
      peaks.push_back({density.xs[mid], h, prom});
    }
    i = j + 1;
  }
  return peaks;
}

namespace {

struct Unwrapper {
  const PsiAt& psi;
  const Worldline& xbar;
  int max_depth;

  Complex at(double t) const {
    const Complex v = psi(t, xbar(t));
    if (!(std::abs(v) > 0.0) || !std::isfinite(std::abs(v)))
      throw EvaluationError("wavefunction vanishes on the worldline", t);
    return v;
  }

  // Lifts a principal-value increment to the branch nearest `predicted`.
  static double near(double d, double predicted) {
    return d + 2.0 * kPi * std::round((predicted - d) / (2.0 * kPi));
  }

  // Phase increment over [ta, tb] given the phase rate at ta. Branches are
  // chosen by continuity of the rate; the interval is accepted when both
  // halves agree with the whole and the rate changes by less than pi/4 per
  // half step. `rate` is updated to the estimated rate at tb.
  double increment(double ta, Complex va, double tb, Complex vb, double& rate,
                   int depth) const {
    const double h = tb - ta, tm = ta + 0.5 * h;
    const Complex vm = at(tm);
    const double d1 = near(std::arg(vm / va), 0.5 * h * rate);
    const double d2 = near(std::arg(vb / vm), d1);
    const double d = near(std::arg(vb / va), d1 + d2);
    const double q = 0.25 * kPi;
    if (std::fabs(d1 + d2 - d) < 1e-9 && std::fabs(d1 - 0.5 * h * rate) < q &&
        std::fabs(d2 - d1) < q) {
      rate = (1.5 * d2 - 0.5 * d1) / (0.5 * h);
      return d;
    }
    if (depth >= max_depth)
      throw EvaluationError("phase increment not resolved by refinement", ta);
    const double left = increment(ta, va, tm, vm, rate, depth + 1);
    return left + increment(tm, vm, tb, vb, rate, depth + 1);
  }
};

}  // namespace

PhaseTrace phase_trace(const PsiAt& psi, const Worldline& xbar, const Action& action,
                       const std::vector<double>& ts, double hbar, int max_depth) {
  if (ts.empty()) throw DomainError("phase trace needs at least one time");
  for (std::size_t k = 1; k < ts.size(); ++k)
    if (!(ts[k] > ts[k - 1])) throw DomainError("phase trace times must increase");
  const Unwrapper u{psi, xbar, max_depth};
  PhaseTrace tr;
  tr.ts = ts;
  Complex prev = u.at(ts[0]);
  double phi = std::arg(prev);
  // Initial rate from a short forward step.
  double rate = 0.0;
  if (ts.size() > 1) {
    const double dt = 1e-6 * (ts[1] - ts[0]);
    rate = std::arg(u.at(ts[0] + dt) / prev) / dt;
  }
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (k > 0) {
      const Complex v = u.at(ts[k]);
      phi += u.increment(ts[k - 1], prev, ts[k], v, rate, 0);
      prev = v;
    }
    const double s = action(ts[k]) / hbar;
    tr.phi.push_back(phi);
    tr.s_cl.push_back(s);
    tr.offset.push_back(phi - s);
  }
  return tr;
}

}  // namespace relwave::analysis
