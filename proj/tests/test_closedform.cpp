#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qbm/closedform.hpp"
#include "qbm/error.hpp"
#include "qbm/quadrature.hpp"
#include "qbm/specfun.hpp"

using namespace qbm;
using C = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
const C kI(0.0, 1.0);

double quad(const ReducedParams& p, double t) {
  return msd_quadrature(p, make_ohmic(p.gamma()), t, TemperatureMode::full_quantum);
}

// sum_{n >= 1} (1 - z^n) / (n (n + c)), direct summation plus a midpoint tail.
C matsubara_sum(double z, C c) {
  constexpr long kN = 1000000;
  C sum = 0.0;
  double zn = 1.0;
  for (long n = 1; n <= kN; ++n) {
    zn *= z;
    const double dn = static_cast<double>(n);
    sum += (1.0 - zn) / (dn * (dn + c));
  }
  const double m = kN + 0.5;
  return sum + std::log((m + c) / m) / c;
}

// The four contour integrals from explicit residue sums.
struct BruteForce {
  C i1, i2, i3, i4;
};

BruteForce brute_force(const ReducedParams& prm, double t) {
  const double g = prm.gamma(), wc = prm.omega_c(), om = prm.omega_th();
  const double p = kPi * om;
  const double z = std::exp(-p * t);
  const C gm(g, -wc), gp(g, wc);  // gamma -+ i wc
  const C am = gm / p, ap = gp / p;
  // Cyclotron poles; the zero-frequency pole gives the Omega t terms.
  const C cyc1 = (1.0 - std::exp(C(-g * t, wc * t))) * specfun::coth(C(wc, g) / om) / (2.0 * C(wc, g));
  const C cyc3 = (1.0 - std::exp(C(-g * t, -wc * t))) * specfun::coth(C(wc, -g) / om) / (2.0 * C(wc, -g));
  const C m = -2.0 * kPi * kI;
  BruteForce b;
  b.i1 = m * (-matsubara_sum(z, -am) / (2.0 * kPi * p) + om * t / (2.0 * gm) + cyc1);
  b.i2 = m * (-matsubara_sum(z, ap) / (2.0 * kPi * p));
  b.i3 = m * (-matsubara_sum(z, -ap) / (2.0 * kPi * p) + om * t / (2.0 * gp) + cyc3);
  b.i4 = m * (-matsubara_sum(z, am) / (2.0 * kPi * p));
  return b;
}

double rel(C a, C b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("residue integrals against explicit residue sums") {
  struct Case {
    double wc, omega_th, t;
  };
  for (const Case c : {Case{0.0, 0.3, 1.5}, Case{0.7, 0.3, 1.5}, Case{5.0, 2.0, 0.4},
                       Case{0.2, 40.0, 3.0}}) {
    CAPTURE(c.wc);
    CAPTURE(c.omega_th);
    const ReducedParams p(1.0, c.wc, c.omega_th);
    const auto b = brute_force(p, c.t);
    CHECK(rel(residue_i1(p, c.t), b.i1) < 1e-10);
    CHECK(rel(residue_i2(p, c.t), b.i2) < 1e-10);
    CHECK(rel(residue_i3(p, c.t), b.i3) < 1e-10);
    CHECK(rel(residue_i4(p, c.t), b.i4) < 1e-10);
  }
}

TEST_CASE("conjugate pairing of the residue integrals") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const ReducedParams p(1.0, 20.0 * u(rng) * u(rng), std::exp(std::log(0.02) + u(rng) * std::log(5e3)));
    const double t = 0.05 + 20.0 * u(rng);
    if (has_pole_coincidence(p)) continue;
    const C i1 = residue_i1(p, t), i2 = residue_i2(p, t);
    CHECK(std::abs(residue_i3(p, t) + std::conj(i1)) <= 1e-12 * std::abs(i1));
    CHECK(std::abs(residue_i4(p, t) + std::conj(i2)) <= 1e-12 * std::abs(i2));
  }
}

TEST_CASE("breakdown assembles to the closed form") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const ReducedParams p(1.0, 20.0 * u(rng) * u(rng), std::exp(std::log(0.02) + u(rng) * std::log(5e3)));
    const double t = 0.05 + 20.0 * u(rng);
    if (has_pole_coincidence(p)) continue;
    const auto b = residue_breakdown(p, t);
    CHECK(b.assembled == b.i1 - b.i2 + b.i3 - b.i4);
    const double collected = msd_exact_ohmic(p, t).value;
    CHECK(b.msd == doctest::Approx(collected).epsilon(1e-11));
    // The MSD is Re[(i / pi) assembled]; the imaginary residue must vanish.
    const C v = kI / kPi * b.assembled;
    CHECK(std::abs(v.imag()) <= kImagTol * std::abs(v.real()));
  }
}

TEST_CASE("closed form against quadrature on the reference grid") {
  double worst = 0.0;
  for (double wc : {0.0, 0.2, 1.0, 5.0, 20.0}) {
    for (double omega_th : {0.05, 1.0, 100.0}) {
      for (double t : {0.1, 1.0, 5.0, 20.0}) {
        const ReducedParams p(1.0, wc, omega_th);
        const auto e = msd_exact_ohmic(p, t);
        CHECK(e.fallback == ExactFallback::none);
        worst = std::max(worst, std::abs(e.value - quad(p, t)) / quad(p, t));
      }
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("reference values") {
  CHECK(msd_exact_ohmic(ReducedParams(1.0, 0.5, 10.0), 2.0).value ==
        doctest::Approx(21.7045643443381088132043930427).epsilon(1e-9));
  CHECK(msd_exact_ohmic(ReducedParams(1.0, 5.0, 1.0), 3.0).value ==
        doctest::Approx(0.635820218507805901824379137625).epsilon(1e-9));
  CHECK(msd_exact_ohmic(ReducedParams(1.0, 20.0, 0.05), 1.0).value ==
        doctest::Approx(0.0913029982535933948735215101963).epsilon(1e-9));
}

TEST_CASE("high temperature without field") {
  // Classical value 2 Omega (t - 1 + e^{-t}) up to quantum corrections of
  // relative order 1 / (Omega t).
  const double omega_th = 1000.0, t = 5.0;
  const double classical = 2.0 * omega_th * (t - 1.0 + std::exp(-t));
  CHECK(msd_exact_ohmic(ReducedParams(1.0, 0.0, omega_th), t).value ==
        doctest::Approx(classical).epsilon(0.005));
}

TEST_CASE("small times fall back to quadrature") {
  const ReducedParams p(1.0, 2.0, 3.0);
  CHECK(exact_t_min(p) == doctest::Approx(1e-3 / (kPi * 3.0)));
  const double t = 0.5 * exact_t_min(p);
  const auto e = msd_exact_ohmic(p, t);
  CHECK(e.fallback == ExactFallback::small_t);
  CHECK(e.value == doctest::Approx(quad(p, t)).epsilon(1e-12));
  CHECK(msd_exact_ohmic(p, 2.0 * exact_t_min(p)).fallback == ExactFallback::none);
}

TEST_CASE("pole coincidence") {
  // gamma / (pi Omega_th) = 1 puts the first Matsubara pole on a cyclotron pole.
  const ReducedParams p(1.0, 0.0, 1.0 / kPi);
  CHECK(has_pole_coincidence(p));
  CHECK_THROWS_AS(residue_i1(p, 1.0), PoleCoincidenceError);
  const auto e = msd_exact_ohmic(p, 1.0);
  CHECK(e.fallback == ExactFallback::pole_coincidence);
  CHECK(e.value == doctest::Approx(quad(p, 1.0)).epsilon(1e-12));

  const ReducedParams near(1.0, 0.0, 1.0 / (kPi * (1.0 + 1e-4)));
  CHECK_FALSE(has_pole_coincidence(near));
  CHECK(msd_exact_ohmic(near, 1.0).value == doctest::Approx(quad(near, 1.0)).epsilon(1e-6));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(msd_exact_ohmic(ReducedParams(1.0, 1.0, 1.0), 0.0), DomainError);
  CHECK_THROWS_AS(msd_exact_ohmic(ReducedParams(1.0, 1.0, 1.0), -1.0), DomainError);
  CHECK_THROWS_AS(msd_exact_ohmic(ReducedParams(1.0, 1.0, 0.0), 1.0), DomainError);
  CHECK_THROWS_AS(residue_i2(ReducedParams(1.0, 1.0, 0.0), 1.0), DomainError);
}

TEST_CASE("long-time slope") {
  for (double wc : {0.0, 0.2, 5.0}) {
    const ReducedParams p(1.0, wc, 10.0);
    const double t = 30.0, h = 0.5;
    const double slope =
        (msd_exact_ohmic(p, t + h).value - msd_exact_ohmic(p, t - h).value) / (2.0 * h);
    CHECK(slope == doctest::Approx(2.0 * 10.0 / (1.0 + wc * wc)).epsilon(1e-3));
  }
}
