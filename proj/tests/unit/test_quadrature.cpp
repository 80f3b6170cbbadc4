#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "oracles.hpp"
#include "relwave/errors.hpp"
#include "relwave/quadrature.hpp"

using namespace relwave;
using quad::Complex;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

quad::QuadratureSpec whole_line(double scale = 1.0) {
  quad::QuadratureSpec s;
  s.domain = quad::DomainKind::whole_line;
  s.substitution = quad::Substitution::linear_rescale;
  s.scale = scale;
  s.step = 0.5;
  s.rel_tol = 1e-14;
  return s;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("gaussian over the real line") {
  const auto r = quad::integrate_complex([](double x) { return Complex(std::exp(-x * x)); },
                                         whole_line());
  CHECK(r.converged);
  CHECK(std::abs(r.value - kSqrtPi) < 1e-14);
  CHECK(r.error < 1e-12);
}

TEST_CASE("shifted gaussian keeps its tiny value") {
  const auto r = quad::integrate_complex(
      [](double x) { return std::exp(Complex(-x * x, 10.0 * x)); }, whole_line());
  // The integrand has modulus up to 1 while the result is 2.5e-11, so the
  // attainable error is a few ulp of the integral of |f| = sqrt(pi).
  const double expected = kSqrtPi * std::exp(-25.0);
  CHECK(std::abs(r.value - expected) < 8.0 * std::numeric_limits<double>::epsilon() * kSqrtPi);
  CHECK(std::abs(r.value.imag()) < 1e-15);
}

TEST_CASE("half-line cosh integrand gives K1(1)") {
  quad::QuadratureSpec s;
  s.domain = quad::DomainKind::half_line;
  s.lower = 0.0;
  s.step = 0.25;
  s.rel_tol = 1e-14;
  const auto r = quad::integrate_complex(
      [](double k) { return Complex(std::exp(-std::cosh(k)) * std::cosh(k)); }, s);
  const double ref = oracle::k1_series(1.0);
  CHECK(ref == doctest::Approx(0.6019072302).epsilon(1e-10));
  CHECK(std::abs(r.value - ref) < 1e-13);
}

TEST_CASE("finite interval and tanh-sinh map") {
  const auto r = quad::integrate_finite([](double x) { return Complex(std::cos(x), x); },
                                        0.0, 2.0);
  CHECK(std::abs(r.value - Complex(std::sin(2.0), 2.0)) < 1e-12);

  quad::QuadratureSpec s;
  s.lower = 0.0;
  s.upper = 1.0;
  s.substitution = quad::Substitution::tanh_sinh;
  s.step = 0.5;
  s.rel_tol = 1e-14;
  // Endpoint singularity: int_0^1 x^{-1/2} dx = 2.
  const auto t = quad::integrate_complex([](double x) { return Complex(1.0 / std::sqrt(x)); }, s);
  CHECK(std::abs(t.value - 2.0) < 1e-10);
}

TEST_CASE("non-finite integrand names the node") {
  auto f = [](double x) {
    return x > 0.3 ? Complex(std::numeric_limits<double>::quiet_NaN()) : Complex(1.0);
  };
  try {
    quad::integrate_finite(f, 0.0, 1.0);
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    CHECK(e.node() > 0.3);
  }
}

TEST_CASE("refinement cap reports non-convergence") {
  quad::QuadratureSpec s;
  s.lower = 0.0;
  s.upper = 1.0;
  s.node_count = 3;
  s.max_nodes = 9;
  s.rel_tol = 1e-15;
  const auto r =
      quad::integrate_complex([](double x) { return Complex(std::sqrt(x)); }, s);
  CHECK_FALSE(r.converged);
  CHECK(r.nodes <= 9);
}

TEST_CASE("rule parameters are validated") {
  quad::QuadratureSpec s;
  s.node_count = 1;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = {};
  s.rel_tol = -1.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = {};
  s.domain = quad::DomainKind::half_line;
  s.substitution = quad::Substitution::tanh_sinh;
  CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("linearity for a fixed rule") {
  auto f = [](double x) { return Complex(std::exp(-x * x) * std::cos(3 * x), 0.0); };
  auto g = [](double x) { return std::exp(Complex(-0.5 * x * x, x)); };
  const Complex a(0.7, -1.3), b(2.1, 0.4);
  const auto spec = whole_line();
  const auto rf = quad::integrate_complex(f, spec);
  const auto rg = quad::integrate_complex(g, spec);
  const auto rh = quad::integrate_complex([&](double x) { return a * f(x) + b * g(x); }, spec);
  const Complex lin = a * rf.value + b * rg.value;
  CHECK(std::abs(rh.value - lin) < 1e-12 * std::abs(lin));
}

TEST_CASE("reversal on a symmetric domain") {
  auto f = [](double x) { return std::exp(Complex(-(x - 0.4) * (x - 0.4), 2.0 * x)); };
  const auto spec = whole_line(1.3);
  const auto r1 = quad::integrate_complex(f, spec);
  const auto r2 = quad::integrate_complex([&](double x) { return f(-x); }, spec);
  CHECK(std::abs(r1.value - r2.value) < 1e-12 * std::abs(r1.value));
}

TEST_CASE("doubling converges geometrically for a gaussian") {
  double prev = std::numeric_limits<double>::infinity();
  int shrinking = 0;
  for (int n : {5, 9, 17, 33}) {
    quad::QuadratureSpec s;
    s.lower = -6.0;
    s.upper = 6.0;
    s.node_count = n;
    s.refinement = quad::Refinement::none;
    const auto r = quad::integrate_complex([](double x) { return Complex(std::exp(-x * x)); }, s);
    const double err = std::abs(r.value - kSqrtPi);
    if (err < 0.25 * prev || err < 1e-14) ++shrinking;
    prev = err;
  }
  CHECK(shrinking == 4);
  CHECK(prev < 1e-14);
}

TEST_CASE("momentum grid") {
  const auto g = quad::momentum_grid(0.0, 1.0, 3);
  REQUIRE(g.nodes.size() == 3);
  CHECK(g.nodes[0] == doctest::Approx(-g.nodes[2]));
  CHECK(g.nodes[1] == 0.0);

  const auto u = quad::momentum_grid(0.0, 1.0, 5);
  CHECK(u.weights[0] == doctest::Approx(0.25));
  for (int k = 1; k < 4; ++k) CHECK(u.weights[k] == doctest::Approx(0.5));
  double sum = 0.0;
  for (double w : u.weights) sum += w;
  CHECK(sum == doctest::Approx(2.0));

  CHECK_THROWS_AS(quad::momentum_grid(0.0, 1.0, 1), DomainError);
  CHECK_THROWS_AS(quad::momentum_grid(0.0, 0.0, 5), DomainError);
  CHECK_THROWS_AS(quad::trapezoid_weights(1, 0.1), DomainError);
}

TEST_CASE("window of 30 hbar/sigma0 holds the gaussian spectrum") {
  // |psi~|^2 ~ exp(-sigma0^2 (p - p0)^2); relative mass outside the window
  // is erfc(sigma0 * half_width).
  const double sigma0 = 0.3, p0 = 9.95, hw = 30.0 / sigma0;
  const auto g = quad::momentum_grid(p0, hw, 4001);
  double inside = 0.0;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    const double d = g.nodes[k] - p0;
    inside += g.weights[k] * std::exp(-sigma0 * sigma0 * d * d);
  }
  const double total = std::sqrt(std::numbers::pi) / sigma0;
  CHECK(inside / total > 0.9999);
  CHECK(std::erfc(sigma0 * hw) < 1e-4);
}

}  // TEST_SUITE
