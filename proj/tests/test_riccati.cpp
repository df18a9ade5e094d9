#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spectra/app/oracles.hpp"
#include "spectra/error.hpp"
#include "spectra/riccati.hpp"
#include "spectra/specfun.hpp"
#include "support.hpp"

using namespace spectra;
using testing_support::Gen;
using testing_support::linspace;

namespace {

const Grid kNumericGrid = Grid::symmetric(10.0, 2001);

// Central differences of alpha, for checking the analytic alpha'.
double fd_alpha_prime(const FactorizationConfig& f, double x) {
  const double h = 1e-5;
  return (alpha_oscillator(x + h, f).alpha - alpha_oscillator(x - h, f).alpha) / (2 * h);
}

}  // namespace

TEST_CASE("alpha_oscillator examples") {
  const auto trivial = alpha_oscillator(0.7, {-0.5, 0.0});
  CHECK(trivial.alpha == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(trivial.alpha_prime == doctest::Approx(1.0).epsilon(1e-14));

  const double want = 1.0 + (0.6 / std::sqrt(std::numbers::pi)) * std::exp(-1.0) /
                                (1.0 + 0.3 * oracles::erf_series(1.0));
  CHECK(std::abs(alpha_oscillator(1.0, {-0.5, 0.3}).alpha - want) <= 1e-12);
  CHECK(want == doctest::Approx(1.099402).epsilon(1e-6));

  const double at_zero = 0.8 * std::tgamma(1.25) / std::tgamma(0.75);
  CHECK(std::abs(alpha_oscillator(0.0, {-1.0, 0.4}).alpha - at_zero) <= 1e-12);
  CHECK(at_zero == doctest::Approx(0.59168).epsilon(1e-4));
}

TEST_CASE("alpha_oscillator: analytic alpha' agrees with central differences") {
  Gen gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    const FactorizationConfig f{gen.uniform(-3.0, 0.45), gen.uniform(-0.95, 0.95)};
    for (double x : linspace(-4.0, 4.0, 17)) {
      CHECK(std::abs(alpha_oscillator(x, f).alpha_prime - fd_alpha_prime(f, x)) <= 1e-6);
    }
  }
}

TEST_CASE("alpha_oscillator errors") {
  CHECK_THROWS_AS(alpha_oscillator(0.0, {0.5, 0.0}), Error);
  CHECK_THROWS_AS(alpha_oscillator(0.0, {-1.0, NAN}), Error);
  // u has a zero near -0.684 for eps = -1/2, nu = 1.5 (1 + 1.5 erf x = 0).
  const double root = -0.68407;  // erf^-1(-2/3)
  const auto cert = nodeless_scan(FactorizationConfig{-0.5, 1.5}, -10.0, 10.0, 2001);
  REQUIRE(cert.zero);
  // Bisect down to adjacent doubles so |psi| falls below the pole threshold.
  const auto sol = oscillator_solution({-0.5, 1.5});
  double lo = *cert.zero - 1e-6;
  double hi = *cert.zero + 1e-6;
  REQUIRE((sol.normalized_psi(lo) < 0) != (sol.normalized_psi(hi) < 0));
  while (std::nextafter(lo, hi) != hi) {
    const double mid = 0.5 * (lo + hi);
    if ((sol.normalized_psi(mid) < 0) == (sol.normalized_psi(lo) < 0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double at = std::abs(sol.normalized_psi(lo)) < std::abs(sol.normalized_psi(hi)) ? lo : hi;
  try {
    alpha_oscillator(at, {-0.5, 1.5});
    FAIL("expected a singularity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singularity);
    REQUIRE(e.location());
    CHECK(*e.location() == doctest::Approx(root).epsilon(1e-4));
  }
}

TEST_CASE("nodeless_scan examples") {
  const auto fig1 = nodeless_scan(FactorizationConfig{-2.0, 0.9}, -10.0, 10.0, 2001);
  CHECK(fig1.nodeless);
  CHECK_FALSE(fig1.zero);

  const auto broken = nodeless_scan(FactorizationConfig{-0.5, 1.5}, -10.0, 10.0, 2001);
  CHECK_FALSE(broken.nodeless);
  REQUIRE(broken.zero);
  // Oracle: 1 + 1.5 erf(x) = 0.
  CHECK(std::abs(1.0 + 1.5 * oracles::erf_series(*broken.zero)) <= 1e-9);
  CHECK(*broken.zero == doctest::Approx(-0.685).epsilon(2e-3));

  // Dense brute-force scan as the oracle for the third example.
  const FactorizationConfig f{0.3, 0.0};
  const auto sol = oscillator_solution(f);
  bool sign_change = false;
  double previous = sol.normalized_psi(-10.0);
  for (double x : linspace(-10.0, 10.0, 200001)) {
    const double now = sol.normalized_psi(x);
    sign_change = sign_change || (now > 0) != (previous > 0);
    previous = now;
  }
  CHECK_FALSE(sign_change);
  CHECK(nodeless_scan(f, -10.0, 10.0, 2001).nodeless);
}

TEST_CASE("nodeless_scan preconditions and certificate fields") {
  CHECK_THROWS_AS(nodeless_scan(FactorizationConfig{-1.0, 0.0}, -1.0, 1.0, 100), Error);
  CHECK_THROWS_AS(nodeless_scan(FactorizationConfig{-1.0, 0.0}, 1.0, -1.0, 201), Error);
  const auto cert = nodeless_scan(FactorizationConfig{-1.0, 0.2}, -5.0, 6.0, 301);
  CHECK(cert.x_lo == -5.0);
  CHECK(cert.x_hi == 6.0);
  CHECK(cert.grid_points == 301);
}

TEST_CASE("nodeless_scan catches a zero pair between grid points") {
  // Two zeros 1e-3 apart, far finer than the 0.1 sampling.
  const auto f = [](double x) { return (x - 0.3305) * (x - 0.3315); };
  const auto cert = nodeless_scan(f, -10.0, 10.0, 201);
  REQUIRE(cert.zero);
  CHECK(*cert.zero == doctest::Approx(0.3305).epsilon(1e-8));
  // Near-touching without a sign change is not a zero.
  const auto touch = nodeless_scan([](double x) { return (x - 0.33) * (x - 0.33) + 1e-14; },
                                   -10.0, 10.0, 201);
  CHECK(touch.nodeless);
}

TEST_CASE("alpha_numeric examples") {
  const auto gauss = alpha_numeric(oscillator_potential, -0.5, 0.0, kNumericGrid);
  double worst = 0.0;
  for (double x : linspace(-5.0, 5.0, 1001)) {
    worst = std::max(worst, std::abs(gauss.evaluate(x).alpha - x));
  }
  CHECK(worst <= 1e-6);

  const auto numeric = alpha_numeric(oscillator_potential, -1.5, 0.0, kNumericGrid);
  worst = 0.0;
  for (double x : linspace(-5.0, 5.0, 1001)) {
    worst = std::max(worst, std::abs(numeric.evaluate(x).alpha -
                                     alpha_oscillator(x, {-1.5, 0.0}).alpha));
  }
  CHECK(worst <= 1e-6);

  const double c = 3.25;
  const auto shifted = alpha_numeric([c](double x) { return 0.5 * x * x + c; }, -0.5 + c,
                                     0.0, kNumericGrid);
  for (double x : linspace(-5.0, 5.0, 101)) {
    CHECK(std::abs(shifted.evaluate(x).alpha - gauss.evaluate(x).alpha) <= 1e-9);
  }
}

TEST_CASE("alpha_numeric errors") {
  // Non-symmetric grid.
  CHECK_THROWS_AS(alpha_numeric(oscillator_potential, -1.0, 0.0, Grid{-5.0, 6.0, 101}), Error);
  // Above the ground level the solution has nodes.
  try {
    alpha_numeric(oscillator_potential, 1.2, 0.0, kNumericGrid);
    FAIL("expected a singularity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singularity);
  }
  NumericOptions lax;
  lax.require_nodeless = false;
  CHECK_NOTHROW(alpha_numeric(oscillator_potential, 1.2, 0.0, kNumericGrid, lax));
}

TEST_CASE("riccati_residual examples") {
  const auto analytic = oscillator_solution({-1.2, 0.45});
  for (double x : linspace(-6.0, 6.0, 121)) {
    CHECK(std::abs(riccati_residual(analytic, x)) <= 1e-8);
  }
  const auto numeric = alpha_numeric(oscillator_potential, -0.5, 0.0, kNumericGrid);
  for (double x : linspace(-5.0, 5.0, 201)) {
    CHECK(std::abs(riccati_residual(numeric, x)) <= 1e-5);
  }
  const auto relabeled = analytic.with_energy_label(analytic.eps() + 1.0);
  for (double x : linspace(-6.0, 6.0, 25)) {
    CHECK(riccati_residual(relabeled, x) == doctest::Approx(2.0).epsilon(1e-8));
  }
}

TEST_CASE("property: analytic Riccati residual over random configurations") {
  Gen gen(22);
  for (int trial = 0; trial < 20; ++trial) {
    const FactorizationConfig f{gen.uniform(-3.0, 0.45), gen.uniform(-0.99, 0.99)};
    const auto sol = oscillator_solution(f);
    for (double x : linspace(-6.0, 6.0, 201)) {
      INFO("eps=" << f.eps << " nu=" << f.nu << " x=" << x);
      CHECK(std::abs(riccati_residual(sol, x)) <= 1e-8);
    }
  }
}

TEST_CASE("property: nu = 0 makes alpha odd") {
  Gen gen(23);
  for (int trial = 0; trial < 10; ++trial) {
    const FactorizationConfig f{gen.uniform(-3.0, 0.45), 0.0};
    for (double x : linspace(0.0, 6.0, 61)) {
      CHECK(std::abs(alpha_oscillator(-x, f).alpha + alpha_oscillator(x, f).alpha) <= 1e-10);
    }
  }
}

TEST_CASE("property: scaled Riccati change of variables") {
  Gen gen(24);
  for (double q : {1.0 / std::sqrt(2.0), 1.0, std::sqrt(2.0)}) {
    for (int trial = 0; trial < 5; ++trial) {
      const FactorizationConfig f{gen.uniform(-3.0, 0.45), gen.uniform(-0.9, 0.9)};
      for (double x : linspace(-6.0, 6.0, 61)) {
        const auto base = alpha_oscillator(x / q, f);
        const double a1 = base.alpha / q;
        const double a1p = base.alpha_prime / (q * q);
        const double y = x / q;
        CHECK(std::abs(q * q * a1p + q * q * a1 * a1 - 2.0 * (0.5 * y * y - f.eps)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("property: analytic and numeric backends agree") {
  Gen gen(25);
  for (int trial = 0; trial < 6; ++trial) {
    const FactorizationConfig f{gen.uniform(-3.0, 0.3), gen.uniform(-0.9, 0.9)};
    const auto numeric = alpha_numeric(oscillator_potential, f.eps, oscillator_slope(f),
                                       kNumericGrid);
    CHECK(numeric.backend() == RiccatiBackend::numeric);
    for (double x : linspace(-5.0, 5.0, 201)) {
      const auto a = numeric.evaluate(x);
      const auto b = alpha_oscillator(x, f);
      CHECK(std::abs(a.alpha - b.alpha) <= 1e-6);
      CHECK(std::abs(a.alpha_prime - b.alpha_prime) <= 1e-5);
    }
  }
}

TEST_CASE("oscillator_slope is alpha(0)") {
  const FactorizationConfig f{-0.8, -0.35};
  CHECK(oscillator_slope(f) == doctest::Approx(alpha_oscillator(0.0, f).alpha).epsilon(1e-13));
  CHECK(oscillator_slope(f) ==
        doctest::Approx(2.0 * f.nu * specfun::gamma_ratio(f.eps)).epsilon(1e-15));
}
