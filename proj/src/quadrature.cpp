#include "relwave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "relwave/errors.hpp"

namespace relwave::quad {

namespace {

constexpr double kPi = std::numbers::pi;

template <std::size_t N>
using Vec = std::array<Complex, N>;

template <std::size_t N>
using VecIntegrand = std::function<Vec<N>(double)>;

template <std::size_t N>
double norm(const Vec<N>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

template <std::size_t N>
void axpy(Vec<N>& y, double a, const Vec<N>& x) {
  for (std::size_t i = 0; i < N; ++i) y[i] += a * x[i];
}

template <std::size_t N>
Vec<N> scaled(const Vec<N>& x, double a) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a * x[i];
  return r;
}

template <std::size_t N>
double distance(const Vec<N>& a, const Vec<N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <std::size_t N>
Vec<N> checked(const VecIntegrand<N>& f, double x) {
  const Vec<N> v = f(x);
  for (const auto& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      std::ostringstream os;
      os.precision(17);
      os << "non-finite integrand value at node x = " << x;
      throw EvaluationError(os.str(), x);
    }
  }
  return v;
}

// Integrand in the substituted variable s, including the Jacobian.
// eval() returns false once the map has saturated (the node coincides with
// a finite endpoint or overflows).
template <std::size_t N>
struct Mapped {
  const VecIntegrand<N>& f;
  const QuadratureSpec& spec;

  bool eval(double s, Vec<N>& out) const {
    switch (spec.substitution) {
      case Substitution::identity:
        out = checked<N>(f, spec.lower + s);
        return true;
      case Substitution::linear_rescale:
        out = scaled(checked<N>(f, spec.lower + spec.scale * s), spec.scale);
        return true;
      case Substitution::sinh_map: {
        const double sh = std::sinh(s);
        if (!std::isfinite(sh) || std::fabs(sh) > 1e250) return false;
        out = scaled(checked<N>(f, spec.lower + spec.scale * sh),
                     spec.scale * std::cosh(s));
        return true;
      }
      case Substitution::tanh_sinh: {
        const double half = 0.5 * (spec.upper - spec.lower);
        const double u = 0.5 * kPi * std::sinh(s);
        if (std::fabs(u) > 350.0) return false;
        // Distance to the nearer endpoint without the cancellation in 1 - tanh.
        const double d = 2.0 * half / (1.0 + std::exp(2.0 * std::fabs(u)));
        const double x = u < 0.0 ? spec.lower + d : spec.upper - d;
        if (d == 0.0 || x <= spec.lower || x >= spec.upper) return false;
        const double ch = std::cosh(u);
        const double w = half * 0.5 * kPi * std::cosh(s) / (ch * ch);
        if (w == 0.0) return false;
        out = scaled(checked<N>(f, x), w);
        return true;
      }
    }
    return false;
  }
};

template <std::size_t N>
struct LevelSum {
  Vec<N> sum{};  // sum of g over the visited nodes (not multiplied by h)
  double tail = 0.0;
  int evaluations = 0;
  bool exhausted = false;  // node budget ran out before the tail criterion
};

// Sum g(k h) for k = first, first + stride, ... in `direction` until
// the tail criterion holds.
template <std::size_t N>
void sum_outward(const Mapped<N>& g, double h, long first, long stride,
                 double direction, double reference, int budget,
                 LevelSum<N>& acc) {
  const QuadratureSpec& spec = g.spec;
  int small_run = 0;
  double run_mag = 0.0;
  Vec<N> local{};
  for (long k = first;; k += stride) {
    if (acc.evaluations >= budget) {
      acc.exhausted = true;
      break;
    }
    Vec<N> v;
    if (!g.eval(direction * static_cast<double>(k) * h, v)) break;
    ++acc.evaluations;
    axpy(local, 1.0, v);
    const double mag = norm(v) * h;
    Vec<N> total = acc.sum;
    axpy(total, 1.0, local);
    const double ref = reference + h * norm(total);
    if (mag <= spec.tail_tol * ref || (mag == 0.0 && ref == 0.0)) {
      ++small_run;
      run_mag += mag;
      if (small_run >= spec.tail_run) break;
    } else {
      small_run = 0;
      run_mag = 0.0;
    }
  }
  axpy(acc.sum, 1.0, local);
  acc.tail += run_mag;
}

bool tolerance_met(const QuadratureSpec& spec, double err, double magnitude) {
  return err <= std::max(spec.abs_tol, spec.rel_tol * magnitude);
}

template <std::size_t N>
QuadResultN<N> finite_trapezoid(const VecIntegrand<N>& f,
                                const QuadratureSpec& spec) {
  const double a = spec.lower;
  const double b = spec.upper;
  long n = spec.node_count;
  double h = (b - a) / static_cast<double>(n - 1);
  QuadResultN<N> res;
  Vec<N> edge{};
  axpy(edge, 0.5, checked<N>(f, a));
  axpy(edge, 0.5, checked<N>(f, b));
  Vec<N> inner{};
  for (long k = 1; k < n - 1; ++k) axpy(inner, 1.0, checked<N>(f, a + k * h));
  res.nodes = static_cast<int>(n);
  auto combine = [&](double step) {
    Vec<N> v = edge;
    axpy(v, 1.0, inner);
    return scaled(v, step);
  };
  Vec<N> value = combine(h);
  res.value = value;
  if (spec.refinement == Refinement::none) return res;

  for (int level = 1; level <= 40; ++level) {
    const long new_nodes = n - 1;
    if (res.nodes + new_nodes > spec.max_nodes) {
      res.converged = false;
      return res;
    }
    h *= 0.5;
    for (long k = 0; k < new_nodes; ++k)
      axpy(inner, 1.0, checked<N>(f, a + (2 * k + 1) * h));
    n = 2 * n - 1;
    res.nodes += static_cast<int>(new_nodes);
    const Vec<N> next = combine(h);
    res.error = distance(next, value);
    value = next;
    res.value = value;
    res.levels = level;
    if (level >= spec.min_levels &&
        tolerance_met(spec, res.error, norm(value))) {
      res.converged = true;
      return res;
    }
  }
  res.converged = false;
  return res;
}

template <std::size_t N>
QuadResultN<N> lattice_trapezoid(const VecIntegrand<N>& f,
                                 const QuadratureSpec& spec) {
  const Mapped<N> g{f, spec};
  const bool half = spec.domain == DomainKind::half_line;
  double h = spec.step > 0.0 ? spec.step : 1.0 / spec.node_count;
  QuadResultN<N> res;

  LevelSum<N> acc;
  Vec<N> v0;
  if (!g.eval(0.0, v0)) throw AccuracyError("quadrature map undefined at s = 0");
  acc.evaluations = 1;
  acc.sum = half ? scaled(v0, 0.5) : v0;
  sum_outward(g, h, 1, 1, +1.0, 0.0, spec.max_nodes, acc);
  if (!half) sum_outward(g, h, 1, 1, -1.0, 0.0, spec.max_nodes, acc);
  Vec<N> value = scaled(acc.sum, h);
  res.value = value;
  res.nodes = acc.evaluations;
  res.tail_bound = acc.tail;
  if (acc.exhausted) {
    res.converged = false;
    return res;
  }
  if (spec.refinement == Refinement::none) return res;

  for (int level = 1; level <= 40; ++level) {
    h *= 0.5;
    LevelSum<N> odd;
    const int budget = spec.max_nodes - res.nodes;
    const double ref = norm(value);
    sum_outward(g, h, 1, 2, +1.0, ref, budget, odd);
    if (!half && !odd.exhausted)
      sum_outward(g, h, 1, 2, -1.0, ref, budget, odd);
    res.nodes += odd.evaluations;
    if (odd.exhausted) {
      res.converged = false;
      return res;
    }
    Vec<N> next = scaled(value, 0.5);
    axpy(next, h, odd.sum);
    res.error = distance(next, value);
    res.tail_bound = odd.tail + 0.5 * res.tail_bound;
    value = next;
    res.value = value;
    res.levels = level;
    if (level >= spec.min_levels &&
        tolerance_met(spec, res.error, norm(value))) {
      res.converged = true;
      return res;
    }
  }
  res.converged = false;
  return res;
}

template <std::size_t N>
QuadResultN<N> integrate_impl(const VecIntegrand<N>& f,
                              const QuadratureSpec& spec) {
  spec.validate();
  const bool plain_finite =
      spec.domain == DomainKind::finite &&
      (spec.substitution == Substitution::identity ||
       spec.substitution == Substitution::linear_rescale);
  if (plain_finite) return finite_trapezoid<N>(f, spec);
  if (spec.domain == DomainKind::finite &&
      spec.substitution != Substitution::tanh_sinh)
    throw DomainError("finite domains support identity, linear or tanh_sinh maps");
  return lattice_trapezoid<N>(f, spec);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (node_count < 2) throw DomainError("quadrature node_count must be >= 2");
  if (abs_tol < 0.0 || rel_tol < 0.0)
    throw DomainError("quadrature tolerances must be non-negative");
  if (max_nodes < node_count)
    throw DomainError("quadrature max_nodes must be >= node_count");
  if (domain == DomainKind::finite && !(upper > lower))
    throw DomainError("finite quadrature domain requires upper > lower");
  if (substitution == Substitution::tanh_sinh && domain != DomainKind::finite)
    throw DomainError("tanh_sinh substitution applies to finite domains only");
  if (!(scale > 0.0)) throw DomainError("quadrature scale must be positive");
  if (tail_run < 1) throw DomainError("quadrature tail_run must be >= 1");
}

std::string QuadratureSpec::describe() const {
  std::ostringstream os;
  os.precision(6);
  const char* dom = domain == DomainKind::finite       ? "finite"
                    : domain == DomainKind::whole_line ? "whole_line"
                                                       : "half_line";
  const char* sub = substitution == Substitution::identity         ? "identity"
                    : substitution == Substitution::linear_rescale ? "linear"
                    : substitution == Substitution::sinh_map       ? "sinh"
                                                                   : "tanh_sinh";
  os << "trapezoid(" << dom << ", " << sub << ", n0=" << node_count
     << ", rel_tol=" << rel_tol << ", abs_tol=" << abs_tol
     << ", max_nodes=" << max_nodes << ")";
  return os.str();
}

QuadResult integrate_complex(const Integrand& f, const QuadratureSpec& spec) {
  const VecIntegrand<1> wrapped = [&f](double x) { return Vec<1>{f(x)}; };
  const QuadResultN<1> r = integrate_impl<1>(wrapped, spec);
  QuadResult out;
  out.value = r.value[0];
  out.error = r.error;
  out.tail_bound = r.tail_bound;
  out.converged = r.converged;
  out.nodes = r.nodes;
  out.levels = r.levels;
  return out;
}

template <std::size_t N>
QuadResultN<N> integrate_complex_n(
    const std::function<std::array<Complex, N>(double)>& f,
    const QuadratureSpec& spec) {
  return integrate_impl<N>(f, spec);
}

template QuadResultN<3> integrate_complex_n<3>(
    const std::function<std::array<Complex, 3>(double)>&, const QuadratureSpec&);

QuadResult integrate_finite(const Integrand& f, double a, double b,
                            double rel_tol) {
  QuadratureSpec spec;
  spec.domain = DomainKind::finite;
  spec.lower = a;
  spec.upper = b;
  spec.substitution = Substitution::tanh_sinh;
  spec.step = 0.5;
  spec.rel_tol = rel_tol;
  spec.abs_tol = 1e-300;
  spec.min_levels = 2;
  return integrate_complex(f, spec);
}

QuadResult integrate_whole_line(const Integrand& f, double center, double scale,
                                double rel_tol) {
  QuadratureSpec spec;
  spec.domain = DomainKind::whole_line;
  spec.lower = center;
  spec.scale = scale;
  spec.substitution = Substitution::sinh_map;
  spec.step = 0.25;
  spec.rel_tol = rel_tol;
  spec.abs_tol = 1e-300;
  spec.min_levels = 2;
  return integrate_complex(f, spec);
}

Grid momentum_grid(double center, double half_width, int node_count) {
  if (node_count < 2) throw DomainError("momentum_grid requires node_count >= 2");
  if (!(half_width > 0.0))
    throw DomainError("momentum_grid requires half_width > 0");
  Grid g;
  const double h = 2.0 * half_width / (node_count - 1);
  g.spacing = h;
  g.nodes.resize(node_count);
  // Offsets measured from the centre keep the node set exactly symmetric.
  const double mid = 0.5 * (node_count - 1);
  for (int k = 0; k < node_count; ++k) g.nodes[k] = center + (k - mid) * h;
  g.weights = trapezoid_weights(node_count, h);
  return g;
}

std::vector<double> trapezoid_weights(int count, double spacing) {
  if (count < 2) throw DomainError("trapezoid rule requires at least 2 nodes");
  std::vector<double> w(count, spacing);
  w.front() = w.back() = 0.5 * spacing;
  return w;
}

}  // namespace relwave::quad
