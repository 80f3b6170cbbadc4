#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "gamma_ext.hpp"
#include "relwave/errors.hpp"
#include "relwave/specfun.hpp"

namespace relwave::specfun {

namespace {

// All routes run in extended precision; the mode functions of strong
// fields combine two solutions whose Wronskian is many orders smaller
// than the products entering it.
using Real = long double;
using XC = detail::XComplex;

constexpr Real kPi = std::numbers::pi_v<Real>;
const XC kI(0.0L, 1.0L);
constexpr Real kEps = std::numeric_limits<Real>::epsilon();
constexpr double kOutputEps = 2.2e-16;

// Largest |z| at which the Maclaurin series is attempted.
constexpr Real kSeriesRadius = 4.5L;
constexpr Real kAsymTol = 1e-18L;
constexpr Real kAsymStart = 8.0L;
constexpr Real kAsymMaxRadius = 400.0L;
constexpr int kMaxOdeSteps = 200000;

// Candidate evaluations: the first one that meets kTarget wins; otherwise
// the smallest error estimate is returned.
constexpr Real kTarget = 1e-15L;
constexpr double kFailThreshold = 1e-8;
// Series values accepted as ODE starting points, and starts tried per route.
constexpr Real kStartTol = 1e-12L;
constexpr int kRouteStarts = 4;

constexpr Real kInf = std::numeric_limits<Real>::infinity();

struct XVal {
  XC value{};
  XC derivative{};
  Real log_scale = 0.0L;
  Real rel_error = 0.0L;
};

bool is_nonpositive_integer(XC z) {
  return z.imag() == 0.0L && z.real() <= 0.0L && z.real() == std::floor(z.real());
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// A complex coefficient held as its logarithm; `zero` marks an exact zero.
struct LogCoef {
  XC log{};
  bool zero = false;
};

struct Term {
  LogCoef coef;
  XVal value;
  XC dfactor = 1.0L;  // chain-rule factor applied to the derivative
};

XVal combine(std::initializer_list<Term> terms) {
  Real s = -kInf;
  for (const Term& t : terms)
    if (!t.coef.zero) s = std::max(s, t.coef.log.real() + t.value.log_scale);
  XVal out;
  if (!std::isfinite(s)) return out;
  out.log_scale = s;
  for (const Term& t : terms) {
    if (t.coef.zero) continue;
    const XC w = std::exp(t.coef.log + (t.value.log_scale - s));
    out.value += w * t.value.value;
    out.derivative += w * t.dfactor * t.value.derivative;
  }
  return out;
}

void renormalize(XVal& y) {
  const Real m = std::max(std::abs(y.value), std::abs(y.derivative));
  if (m == 0.0L || (m > 1e-40L && m < 1e40L)) return;
  y.value /= m;
  y.derivative /= m;
  y.log_scale += std::log(m);
}

struct KummerSum {
  XC value{};
  XC dvalue{};  // dM/dx
  Real abs_value = 0.0L;
  Real abs_dvalue = 0.0L;
};

// M(alpha, beta, x) and its x-derivative by direct summation.
KummerSum kummer_m(XC alpha, Real beta, XC x) {
  KummerSum r;
  XC term = 1.0L;
  r.value = term;
  r.abs_value = 1.0L;
  for (int k = 1; k < 2000; ++k) {
    const Real kr = static_cast<Real>(k);
    const XC ratio = (alpha + (kr - 1.0L)) / (beta + kr - 1.0L);
    const XC dterm = term * ratio;  // contributes to dM/dx
    term = dterm * x / kr;
    r.dvalue += dterm;
    r.abs_dvalue += std::abs(dterm);
    r.value += term;
    r.abs_value += std::abs(term);
    if (term == 0.0L && dterm == 0.0L) break;
    const bool shrinking = std::abs(ratio * x) < 0.5L * kr;
    if (shrinking && std::abs(term) <= 1e-21L * r.abs_value &&
        std::abs(dterm) <= 1e-21L * r.abs_dvalue + 1e-300L)
      break;
  }
  return r;
}

// Maclaurin representation through the values U(a,0), U'(a,0), with the
// cancellation factor (sum of term magnitudes over the result) as error
// estimate.
XVal from_series(XC nu, XC z) {
  const XC a = -nu - 0.5L;
  const Real log2 = std::log(2.0L);
  const Real half_log_pi = 0.5L * std::log(kPi);
  LogCoef ca, cb;
  const XC ga = 0.75L + 0.5L * a;
  const XC gb = 0.25L + 0.5L * a;
  ca.zero = is_nonpositive_integer(ga);
  cb.zero = is_nonpositive_integer(gb);
  if (!ca.zero) ca.log = half_log_pi - (0.5L * a + 0.25L) * log2 - detail::lgamma_ext(ga);
  if (!cb.zero)
    cb.log = half_log_pi + XC(0.0L, kPi) - (0.5L * a - 0.25L) * log2 -
             detail::lgamma_ext(gb);

  const XC x = 0.5L * z * z;
  const KummerSum m1 = kummer_m(0.5L * a + 0.25L, 0.5L, x);
  const KummerSum m2 = kummer_m(0.5L * a + 0.75L, 1.5L, x);
  const Real az = std::abs(z);

  XVal u1{m1.value, -0.5L * z * m1.value + z * m1.dvalue};
  XVal u2{z * m2.value, m2.value - x * m2.value + z * z * m2.dvalue};

  Real s = -kInf;
  if (!ca.zero) s = std::max(s, ca.log.real());
  if (!cb.zero) s = std::max(s, cb.log.real());
  const Real wa = ca.zero ? 0.0L : std::exp(ca.log.real() - s);
  const Real wb = cb.zero ? 0.0L : std::exp(cb.log.real() - s);

  XVal out = combine({Term{ca, u1}, Term{cb, u2}});
  const XC e = -0.25L * z * z;
  out.log_scale += e.real();
  const XC ph = std::exp(XC(0.0L, e.imag()));
  out.value *= ph;
  out.derivative *= ph;

  const Real absv = wa * m1.abs_value + wb * az * m2.abs_value;
  const Real absd =
      wa * (0.5L * az * m1.abs_value + az * m1.abs_dvalue) +
      wb * ((1.0L + 0.5L * az * az) * m2.abs_value + az * az * m2.abs_dvalue);
  const Real lv = out.value != 0.0L ? absv / std::abs(out.value) : kInf;
  const Real ld = out.derivative != 0.0L ? absd / std::abs(out.derivative) : kInf;
  out.rel_error = 4.0L * kEps * std::max(lv, ld);
  return out;
}

// Poincare expansion z^nu e^{-z^2/4} sum_k t_k, valid for |arg z| <= pi/2
// at large |z|. Empty when the terms stop decreasing before reaching tol.
std::optional<XVal> asymptotic(XC nu, XC z) {
  const XC z2 = z * z;
  XC t = 1.0L;
  XC s = 1.0L;
  XC ds = 0.0L;
  Real last = 1.0L;
  bool converged = false;
  for (int k = 0; k < 400; ++k) {
    const Real kr = static_cast<Real>(k);
    const XC next = -t * (nu - 2.0L * kr) * (nu - 2.0L * kr - 1.0L) /
                    (2.0L * (kr + 1.0L) * z2);
    const Real mag = std::abs(next);
    if (mag > last && k > 0) break;
    s += next;
    ds += next * (-2.0L * (kr + 1.0L)) / z;
    t = next;
    last = mag;
    if (mag <= 1e-21L * std::abs(s)) {
      converged = true;
      break;
    }
  }
  if (!converged && last > kAsymTol * std::abs(s)) return std::nullopt;
  const XC lp = nu * std::log(z) - 0.25L * z2;
  const XC ph = std::exp(XC(0.0L, lp.imag()));
  XVal out;
  out.value = ph * s;
  out.derivative = ph * (s * (nu / z - 0.5L * z) + ds);
  out.log_scale = lp.real();
  out.rel_error = std::max(converged ? 0.0L : last / std::abs(s), 4.0L * kEps);
  return out;
}

// Taylor-series integration of D'' = (z^2/4 - nu - 1/2) D along the segment
// from `from` to `to`. The fundamental matrix is propagated rather than the
// solution itself, which gives the amplification of the starting error.
XVal integrate_ode(XC nu, XC from, const XVal& y0, XC to) {
  const XC c = -nu - 0.5L;
  const Real length = std::abs(to - from);
  if (length == 0.0L) return y0;
  const XC dir = (to - from) / length;
  // Columns of the propagator, value and derivative, sharing one log-scale.
  std::array<XC, 2> val = {1.0L, 0.0L};
  std::array<XC, 2> der = {0.0L, 1.0L};
  Real scale = 0.0L;
  XC z0 = from;
  Real travelled = 0.0L;
  int steps = 0;
  std::array<XC, 402> b{};
  for (; steps < kMaxOdeSteps && travelled < length; ++steps) {
    const XC q0 = 0.25L * z0 * z0 + c;
    const Real delta = std::min(0.5L, 2.0L / (1.0L + std::sqrt(std::abs(q0))));
    const Real len = std::min(delta, length - travelled);
    const XC h = dir * len;
    const XC h2 = h * h;
    for (int col = 0; col < 2; ++col) {
      // b[n] = a_n h^n for the Taylor coefficients a_n about z0.
      b[0] = val[col];
      b[1] = der[col] * h;
      XC sum = b[0] + b[1];
      XC dsum = b[1];
      const Real ref = std::abs(b[0]) + std::abs(b[1]);
      for (int n = 0; n < 400; ++n) {
        XC acc = q0 * b[n];
        if (n >= 1) acc += 0.5L * z0 * h * b[n - 1];
        if (n >= 2) acc += 0.25L * h2 * b[n - 2];
        b[n + 2] = h2 * acc / static_cast<Real>((n + 2) * (n + 1));
        sum += b[n + 2];
        dsum += static_cast<Real>(n + 2) * b[n + 2];
        const Real tail = std::abs(b[n + 2]) + std::abs(b[n + 1]) + std::abs(b[n]);
        if (n >= 2 && tail <= 1e-22L * (ref + std::abs(sum))) break;
      }
      val[col] = sum;
      der[col] = dsum / h;
    }
    const Real m = std::max({std::abs(val[0]), std::abs(val[1]),
                             std::abs(der[0]), std::abs(der[1])});
    if (m > 1e40L || m < 1e-40L) {
      for (int col = 0; col < 2; ++col) {
        val[col] /= m;
        der[col] /= m;
      }
      scale += std::log(m);
    }
    z0 += h;
    travelled += len;
  }
  if (travelled < length)
    throw AccuracyError("parabolic cylinder ODE integration exceeded its step budget");

  XVal y;
  y.value = val[0] * y0.value + val[1] * y0.derivative;
  y.derivative = der[0] * y0.value + der[1] * y0.derivative;
  y.log_scale = y0.log_scale + scale;
  const Real kappa = 1.0L + std::sqrt(std::abs(0.25L * to * to + c));
  auto wnorm = [kappa](XC v, XC d) { return std::abs(v) + std::abs(d) / kappa; };
  const Real end = wnorm(y.value, y.derivative);
  const Real spread = wnorm(val[0], der[0]) * std::abs(y0.value) +
                      wnorm(val[1], der[1]) * std::abs(y0.derivative);
  const Real cond = end > 0.0L ? spread / end : kInf;
  y.rel_error = cond * (y0.rel_error + 2.0L * kEps * steps);
  renormalize(y);
  return y;
}

XVal best_of(const XVal& a, const XVal& b) {
  return a.rel_error <= b.rel_error ? a : b;
}

XVal failed() { return XVal{0.0L, 0.0L, 0.0L, kInf}; }

// Candidate evaluations in the closed right half plane.
XVal right_half_plane(XC nu, XC z) {
  const Real r = std::abs(z);
  XVal best = failed();
  if (r <= kSeriesRadius) {
    best = from_series(nu, z);
    if (best.rel_error <= kTarget) return best;
  }
  if (r >= kAsymStart) {
    if (auto v = asymptotic(nu, z)) return *v;
  }
  const Real theta = std::arg(z);
  const XC unit = std::polar(1.0L, theta);

  // Several starting points are tried on each route, keeping the smallest
  // estimated error at z.
  auto inward = [&]() -> XVal {
    XVal out = failed();
    int tried = 0;
    for (Real ra = std::max(kAsymStart, r); ra <= kAsymMaxRadius && tried < kRouteStarts;
         ra *= 1.25L) {
      if (auto v = asymptotic(nu, ra * unit)) {
        out = best_of(out, integrate_ode(nu, ra * unit, *v, z));
        if (out.rel_error <= kTarget) break;
        ++tried;
      }
    }
    return out;
  };
  auto outward = [&]() -> XVal {
    XVal out = failed();
    int tried = 0;
    for (Real rs = std::min(r, kSeriesRadius); rs > 1e-3L && tried < kRouteStarts;
         rs *= 0.8L) {
      const XVal v = from_series(nu, rs * unit);
      if (v.rel_error <= kStartTol) {
        out = best_of(out, integrate_ode(nu, rs * unit, v, z));
        if (out.rel_error <= kTarget) break;
        ++tried;
      }
    }
    return out;
  };

  // D is recessive or neutral for |arg z| <= pi/4 and dominant beyond, so
  // the stable direction is tried first; large orders can reverse this.
  const bool recessive = std::fabs(theta) <= 0.25L * kPi + 1e-9L;
  best = best_of(best, recessive ? inward() : outward());
  if (best.rel_error <= kTarget) return best;
  return best_of(best, recessive ? outward() : inward());
}

XVal evaluate(XC nu, XC z) {
  XVal best = failed();
  if (std::abs(z) <= kSeriesRadius) {
    best = from_series(nu, z);
    if (best.rel_error <= kTarget) return best;
  }
  if (z.real() >= 0.0L) return best_of(best, right_half_plane(nu, z));

  // Connection to the right half plane:
  //   D_nu(z) = e^{+-i pi nu} D_nu(-z)
  //           + sqrt(2 pi)/Gamma(-nu) e^{+-i pi (nu+1)/2} D_{-nu-1}(-+i z).
  const Real sgn = z.imag() >= 0.0L ? 1.0L : -1.0L;
  const XVal p1 = right_half_plane(nu, -z);
  LogCoef c1{sgn * kI * kPi * nu, false};
  LogCoef c2;
  const XC mnu = -nu;
  c2.zero = is_nonpositive_integer(mnu);
  XVal p2;
  if (!c2.zero) {
    c2.log = 0.5L * std::log(2.0L * kPi) - detail::lgamma_ext(mnu) +
             sgn * kI * kPi * (nu + 1.0L) * 0.5L;
    p2 = right_half_plane(-nu - 1.0L, -sgn * kI * z);
  }
  XVal v = combine({Term{c1, p1, -1.0L}, Term{c2, p2, -sgn * kI}});
  // Cancellation between the two branches amplifies their errors.
  const Real m1 = std::exp(c1.log.real() + p1.log_scale - v.log_scale);
  const Real m2 = c2.zero ? 0.0L : std::exp(c2.log.real() + p2.log_scale - v.log_scale);
  const Real av1 = m1 * std::abs(p1.value), av2 = m2 * std::abs(p2.value);
  const Real ad1 = m1 * std::abs(p1.derivative), ad2 = m2 * std::abs(p2.derivative);
  const Real lossv = (av1 + av2) / std::abs(v.value);
  const Real lossd = (ad1 + ad2) / std::abs(v.derivative);
  const Real e12 =
      std::max({p1.rel_error, c2.zero ? 0.0L : p2.rel_error, 4.0L * kEps});
  v.rel_error = std::max(lossv, lossd) * e12;
  best = best_of(best, v);
  if (best.rel_error > kTarget) {
    // Direct integration outward along the ray from the series region.
    const XC unit = std::polar(1.0L, std::arg(z));
    int tried = 0;
    for (Real rs = std::min(std::abs(z), kSeriesRadius); rs > 1e-3L && tried < kRouteStarts;
         rs *= 0.8L) {
      const XVal s0 = from_series(nu, rs * unit);
      if (s0.rel_error <= kStartTol) {
        best = best_of(best, integrate_ode(nu, rs * unit, s0, z));
        if (best.rel_error <= kTarget) break;
        ++tried;
      }
    }
  }
  return best;
}

Complex to_double(XC v) {
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

}  // namespace

Complex PcfValue::unscaled_value() const { return value * std::exp(log_scale); }
Complex PcfValue::unscaled_derivative() const {
  return derivative * std::exp(log_scale);
}

PcfValue pcf_d_scaled(Complex nu, Complex z) {
  if (!finite(nu) || !finite(z))
    throw DomainError("parabolic cylinder function requires finite arguments");
  XVal best = evaluate(XC(nu.real(), nu.imag()), XC(z.real(), z.imag()));
  if (!(best.rel_error <= kFailThreshold)) {
    std::ostringstream os;
    os.precision(6);
    os << "parabolic cylinder D_nu(z) not accurate for nu = " << nu << ", z = " << z
       << " (estimated relative error " << static_cast<double>(best.rel_error) << ")";
    throw AccuracyError(os.str());
  }
  // Move the magnitude into the double log-scale before rounding.
  const Real m = std::max(std::abs(best.value), std::abs(best.derivative));
  if (m > 0.0L) {
    best.value /= m;
    best.derivative /= m;
    best.log_scale += std::log(m);
  }
  // The rounding of the log-scale to double goes back into the mantissa.
  PcfValue out;
  out.log_scale = static_cast<double>(best.log_scale);
  const Real rest = std::exp(best.log_scale - static_cast<Real>(out.log_scale));
  out.value = to_double(best.value * rest);
  out.derivative = to_double(best.derivative * rest);
  out.rel_error = std::max(static_cast<double>(best.rel_error), kOutputEps);
  return out;
}

Complex pcf_d(Complex nu, Complex z) { return pcf_d_scaled(nu, z).unscaled_value(); }

Complex pcf_d_dz(Complex nu, Complex z) {
  return pcf_d_scaled(nu, z).unscaled_derivative();
}

PcfOrder::PcfOrder(Complex nu) : nu_(nu) {
  if (!finite(nu)) throw DomainError("parabolic cylinder order must be finite");
}

PcfOrder PcfOrder::for_field_mode(double mass_squared, double force, int sign) {
  if (force == 0.0) throw DomainError("field mode order requires a nonzero force");
  if (!(mass_squared > 0.0)) throw DomainError("field mode order requires M^2 > 0");
  if (sign != 1 && sign != -1) throw DomainError("field mode sign must be +1 or -1");
  return PcfOrder(Complex(-0.5, -sign * mass_squared / (2.0 * force)));
}

bool PcfOrder::on_field_line() const noexcept { return nu_.real() == -0.5; }

}  // namespace relwave::specfun
