#include <cmath>
#include <numbers>

#include <doctest.h>

#include "relwave/analysis.hpp"
#include "relwave/errors.hpp"
#include "relwave/free_packets.hpp"
#include "relwave/quadrature.hpp"

using namespace relwave;
using doctest::Approx;

namespace {

ClosedPacketConfig closed(double theta, double v0) {
  ClosedPacketConfig c;
  c.theta = theta;
  c.motion = FreeMotion(v0, 0.0);
  return c;
}

GaussianPacketConfig gauss(double sigma0, double gamma0) {
  GaussianPacketConfig g;
  g.sigma0 = sigma0;
  g.p0 = std::sqrt(gamma0 * gamma0 - 1.0);
  return g;
}


}  // namespace

TEST_SUITE("free_packets") {

TEST_CASE("W(p)") {
  CHECK(w_of_p(0.0, FreeMotion(0.0, 0.0)) == 1.0);
  const FreeMotion q(0.25, 0.0);
  CHECK(w_of_p(q.p0(), q) == Approx(1.0 / q.gamma0()).epsilon(1e-15));
  CHECK(w_of_p(q.p0(), q) == Approx(0.96825).epsilon(1e-5));
  const double h = 1e-5;
  CHECK(std::abs(w_of_p(q.p0() + h, q) - w_of_p(q.p0() - h, q)) / (2 * h) < 1e-9);
  const FreeMotion fast(0.99, 0.0);
  for (int k = 0; k <= 1000; ++k) CHECK(w_of_p(-50.0 + 0.1 * k, fast) > 0.0);
}

TEST_CASE("closed spectrum") {
  const ClosedPacket pk(closed(1.0, 0.25));
  double best_p = 0.0, best = 0.0;
  for (int k = 0; k <= 20000; ++k) {
    const double p = -1.0 + 1e-4 * k;
    if (pk.spectrum(p) > best) best = pk.spectrum(p), best_p = p;
  }
  CHECK(best_p == Approx(0.2582).epsilon(2e-3));
  const ClosedPacket rest(closed(10.0, 0.0));
  CHECK(rest.spectrum(1.0) / rest.spectrum(0.0) ==
        Approx(std::exp(-20.0 * (std::sqrt(2.0) - 1.0))).epsilon(1e-12));
  CHECK(rest.spectrum(1.0) / rest.spectrum(0.0) == Approx(2.52e-4).epsilon(5e-3));
  CHECK(spectrum_closed(0.3, closed(10.0, 0.0)) == rest.spectrum(0.3));
}

TEST_CASE("closed form agrees with momentum quadrature") {
  for (double theta : {0.1, 1.0, 10.0, 100.0}) {
    const ClosedPacket pk(closed(theta, 0.25));
    // At (0, x0) the mode integrand is positive, so these are the integrals
    // of |f| and |E f|. The quadrature cannot resolve a value below a few
    // ulp of them, which matters in the far tails of the wide packets.
    const ClosedEval l1 = pk.quadrature(0.0, 0.0);
    const double floor_psi = 1e-13 * std::abs(l1.value.psi);
    const double floor_dt = 1e-13 * std::abs(l1.value.dpsi_dt);
    for (double t : {0.0, 10.0, 20.0}) {
      for (double x = -30.0; x <= 30.0; x += 2.5) {
        const ClosedEval c = pk.evaluate(t, x);
        if (c.branch_flag || c.fallback) continue;
        const ClosedEval q = pk.quadrature(t, x);
        if (std::abs(q.value.psi) < 1e-250) continue;
        INFO("c theta = " << theta << ", t = " << t << ", x = " << x);
        CHECK(std::abs(c.value.psi - q.value.psi) < 1e-6 * std::abs(q.value.psi) + floor_psi);
        CHECK(std::abs(c.value.dpsi_dt - q.value.dpsi_dt) <
              1e-6 * std::abs(q.value.dpsi_dt) + floor_dt);
      }
    }
  }
}

TEST_CASE("closed packet is normalized and drifts at v0") {
  const ClosedPacket pk(closed(100.0, 0.25));
  for (double t : {0.0, 10.0, 20.0}) {
    const auto s = pk.slice(t, uniform_grid(-100.0, 100.0, 8001));
    CHECK(analysis::l2_norm_squared(s) == Approx(1.0).epsilon(1e-5));
    CHECK(analysis::expectation_x(s) == Approx(0.25 * t).epsilon(1e-4));
    const auto rho = analysis::charge_density(s, PhysParams{});
    const auto peaks = analysis::find_peaks(rho);
    REQUIRE(peaks.size() == 1);
    // Faster components carry more charge, so the peak of rho runs slightly
    // ahead of <x> = v0 t.
    INFO("peak " << peaks[0].x << " t " << t);
    CHECK(peaks[0].x - 0.25 * t > -0.05);
    CHECK(peaks[0].x - 0.25 * t < 0.01 * t + 0.05);
  }
}

TEST_CASE("closed packet splits at the lightcone") {
  const ClosedPacket pk(closed(0.1, 0.25));
  const auto rho =
      analysis::charge_density(pk.slice(20.0, uniform_grid(-40.0, 40.0, 16001)), PhysParams{});
  const auto peaks = analysis::find_peaks(rho, 0.05);
  REQUIRE(peaks.size() == 2);
  CHECK(std::abs(peaks[0].x + 20.0) < 2.0);
  CHECK(std::abs(peaks[1].x - 20.0) < 2.0);
}

TEST_CASE("Gaussian packet reproduces its initial state") {
  GaussianPacketConfig cfg = gauss(3.0, 1.0);
  cfg.x0 = 2.0;
  const GaussPacket pk(cfg);
  const double s = cfg.sigma0;
  double worst = 0.0;
  for (double x = -20.0; x <= 24.0; x += 0.1) {
    const double d = x - 2.0;
    const double g = std::exp(-d * d / (s * s)) / (s * std::sqrt(std::numbers::pi));
    worst = std::max(worst, std::abs(std::norm(pk.at(0.0, x).psi) - g));
    CHECK(std::abs(pk.at(0.0, x).psi - pk.initial(x)) < 1e-10);
  }
  CHECK(worst < 1e-8);
  CHECK(pk.tail_bound() < 1e-12);
}

TEST_CASE("Gaussian spectral sum matches direct momentum quadrature") {
  // Psi(t, x) = int dp psi~(p) exp(i (p x - E t)),
  // psi~(p) = sqrt(sigma0) / sqrt(2 pi^{3/2}) exp(-sigma0^2 (p - p0)^2 / 2 - i p x0).
  auto cfg = gauss(0.3, 10.0);
  cfg.x0 = -1.5;
  const GaussPacket pk(cfg);
  const double s = cfg.sigma0, p0 = cfg.p0, x0 = cfg.x0;
  const double c0 = std::sqrt(s) / std::sqrt(2.0 * std::pow(std::numbers::pi, 1.5));
  for (double t : {0.0, 4.0, 16.0}) {
    for (double x : {-1.0, 3.0, 14.0, 14.9}) {
      auto integrand = [&](double p, bool deriv) {
        const double e = std::sqrt(1.0 + p * p);
        const Complex a = c0 * std::exp(Complex(-0.5 * s * s * (p - p0) * (p - p0),
                                                p * (x - x0) - e * t));
        return deriv ? Complex(0.0, -e) * a : a;
      };
      const auto q = quad::integrate_whole_line([&](double p) { return integrand(p, false); },
                                                p0, 1.0 / s, 1e-13);
      const auto qd = quad::integrate_whole_line([&](double p) { return integrand(p, true); },
                                                 p0, 1.0 / s, 1e-13);
      const PsiValue a = pk.at(t, x);
      INFO("t = " << t << ", x = " << x);
      CHECK(std::abs(a.psi - q.value) < 1e-10);
      CHECK(std::abs(a.dpsi_dt - qd.value) < 1e-9);
      CHECK(std::abs(psi_gauss_free(t, x, cfg).psi - q.value) < 1e-10);
    }
  }
}

TEST_CASE("Gaussian packet keeps its norm") {
  for (double sigma0 : {0.3, 3.0}) {
    const GaussPacket pk(gauss(sigma0, 1.0));
    for (double t : {0.0, 8.0, 16.0}) {
      const auto s = pk.slice(t, uniform_grid(-30.0, 50.0, 16001));
      CHECK(analysis::l2_norm_squared(s) == Approx(1.0).epsilon(1e-5));
    }
  }
}

TEST_CASE("narrow Gaussian at rest has negative charge density") {
  const GaussPacket pk(gauss(0.3, 1.0));
  const auto rho =
      analysis::charge_density(pk.slice(0.0, uniform_grid(-10.0, 10.0, 4001)), PhysParams{});
  double lo = 0.0;
  for (double r : rho.rho) lo = std::min(lo, r);
  CHECK(lo < 0.0);
}

TEST_CASE("suppression ratio") {
  const GaussPacket fast(gauss(0.3, 10.0));
  CHECK(fast.config().p0 == Approx(9.95).epsilon(1e-3));
  const double ratio = fast.suppression_ratio();
  CHECK(ratio < std::exp(-9.0));
  const double s = 0.3, p0 = fast.config().p0;
  CHECK(ratio == Approx(std::exp(-s * s * (p0 + 1.0) * (p0 + 1.0))).epsilon(1e-12));
}

TEST_CASE("configuration checks") {
  CHECK_THROWS_AS(ClosedPacket(closed(0.0, 0.1)), DomainError);
  GaussianPacketConfig g;
  g.sigma0 = -1.0;
  CHECK_THROWS_AS(GaussPacket{g}, DomainError);
}

}  // TEST_SUITE
