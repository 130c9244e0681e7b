#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qbm/closedform.hpp"
#include "qbm/error.hpp"
#include "qbm/limits.hpp"
#include "qbm/quadrature.hpp"
#include "qbm/specfun.hpp"

using namespace qbm;

namespace {

constexpr double kPi = std::numbers::pi;

double full(const ReducedParams& p, double t) {
  return msd_quadrature(p, make_ohmic(p.gamma()), t, TemperatureMode::full_quantum);
}

struct Fit {
  double slope, intercept, r2;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double cxx = sxx - sx * sx / n, cxy = sxy - sx * sy / n, cyy = syy - sy * sy / n;
  return {cxy / cxx, (sy - cxy / cxx * sx) / n, cxy * cxy / (cxx * cyy)};
}

}  // namespace

TEST_CASE("high temperature formula values") {
  const ReducedParams p(1.0, 0.0, 200.0);
  CHECK(msd_high_temperature(p, 5.0) == doctest::Approx(400.0 * (4.0 + std::exp(-5.0))).epsilon(1e-12));
  CHECK(msd_high_temperature(p, 0.0) == 0.0);
  CHECK_THROWS_AS(msd_high_temperature(p, -1.0), DomainError);
  CHECK_THROWS_AS(msd_high_temperature(ReducedParams(1.0, 0.0, 0.0), 1.0), DomainError);

  // Small t: Omega t^2 without cancellation.
  for (double t : {1e-8, 1e-5, 1e-3}) {
    CHECK(msd_high_temperature(ReducedParams(1.0, 10.0, 100.0), t) / (t * t) ==
          doctest::Approx(100.0).epsilon(2.0 * t));
  }
}

TEST_CASE("high temperature formula against the exact MSD") {
  const ReducedParams p(1.0, 1.0, 200.0);
  CHECK(msd_high_temperature(p, 3.0) == doctest::Approx(msd_exact_ohmic(p, 3.0).value).epsilon(0.01));
}

TEST_CASE("high temperature extrema follow the cyclotron period") {
  // Successive extrema of the oscillating part sit pi / wc apart.
  const ReducedParams p(1.0, 10.0, 200.0);
  std::vector<double> ext;
  const double h = 1e-4;
  double prev_d = msd_high_temperature(p, h) - msd_high_temperature(p, 0.0);
  for (double t = h; t < 3.0; t += h) {
    const double d = msd_high_temperature(p, t + h) - msd_high_temperature(p, t);
    // Extrema of the oscillation about the drift line, i.e. of msd - slope t.
    const double drift = 2.0 * 200.0 / 101.0 * h;
    if ((prev_d - drift) * (d - drift) < 0.0) ext.push_back(t);
    prev_d = d;
  }
  REQUIRE(ext.size() >= 4);
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(ext[i] - ext[i - 1] == doctest::Approx(kPi / 10.0).epsilon(0.02));
  }
}

TEST_CASE("high temperature formula is nonnegative and starts at zero") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const ReducedParams p(std::exp(std::log(0.1) + u(rng) * std::log(100.0)), 50.0 * u(rng),
                          std::exp(std::log(0.1) + u(rng) * std::log(1e4)));
    CHECK(msd_high_temperature(p, 0.0) == 0.0);
    CHECK(msd_high_temperature(p, std::exp(std::log(1e-6) + u(rng) * std::log(1e8))) >= 0.0);
  }
}

TEST_CASE("high temperature validity rule") {
  const ReducedParams p(1.0, 5.0, 100.0);
  CHECK(high_temperature_valid(p, 0.0));
  CHECK(high_temperature_valid(p, 1.0));
  CHECK_FALSE(high_temperature_valid(p, 0.05));
  CHECK_FALSE(high_temperature_valid(ReducedParams(1.0, 20.0, 100.0), 1.0));
  const auto w = validity_window(p, LimitRegime::high_t);
  REQUIRE(w.has_value());
  CHECK(w->t_lo == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(std::isinf(w->t_hi));
  CHECK_FALSE(validity_window(ReducedParams(1.0, 20.0, 100.0), LimitRegime::high_t).has_value());
}

TEST_CASE("high temperature agreement with the exact MSD") {
  // omega_c = 20 at t < 0.2 is outside the 1% band; the acceptance run
  // reports that case.
  for (double wc : {0.0, 0.2, 5.0}) {
    const ReducedParams p(1.0, wc, 100.0);
    for (double t = 0.1; t <= 20.0; t += 0.1) {
      CAPTURE(wc);
      CAPTURE(t);
      CHECK(msd_high_temperature(p, t) == doctest::Approx(msd_exact_ohmic(p, t).value).epsilon(0.01));
    }
  }
}

TEST_CASE("low temperature formula values") {
  const ReducedParams p(1.0, 0.0, 0.0);
  // Zero crossing at t = e^{-gamma_0}.
  CHECK(std::abs(msd_low_temperature(p, std::exp(-specfun::euler_mascheroni()))) < 1e-15);
  CHECK(msd_low_temperature(p, 10.0) ==
        doctest::Approx(4.0 / kPi * (std::log(10.0) + specfun::euler_mascheroni())).epsilon(1e-14));
  CHECK(msd_low_temperature(p, 0.1) < 0.0);
  CHECK_THROWS_AS(msd_low_temperature(p, 0.0), DomainError);
  CHECK_THROWS_AS(msd_low_temperature(p, -1.0), DomainError);
  const auto e = evaluate_low_temperature(p, 0.1);
  CHECK_FALSE(e.within_validity);
}

TEST_CASE("low temperature formula in a strong field oscillates about its plateau") {
  const ReducedParams p(1.0, 10.0, 0.0);
  const double s2 = 101.0;
  std::vector<double> dev;
  for (double t = 0.5; t < 3.0; t += 0.01) {
    const double plateau = 2.0 / (kPi * s2) * (2.0 * std::log(std::sqrt(s2) * t) +
                                              2.0 * specfun::euler_mascheroni() + 10.0 * kPi);
    dev.push_back(msd_low_temperature(p, t) - plateau);
  }
  int sign_changes = 0;
  for (std::size_t i = 1; i < dev.size(); ++i) sign_changes += dev[i - 1] * dev[i] < 0.0;
  CHECK(sign_changes >= 6);
}

TEST_CASE("low temperature agreement inside the validity window") {
  std::size_t checked = 0;
  for (double wc : {0.0, 0.2, 1.0, 5.0, 20.0, 100.0}) {
    const ReducedParams p(1.0, wc, 0.01);
    for (double lt = -2.0; lt <= 3.0; lt += 0.05) {
      const double t = std::pow(10.0, lt);
      if (!low_temperature_valid(p, t)) continue;
      ++checked;
      CAPTURE(wc);
      CAPTURE(t);
      CHECK(msd_low_temperature(p, t) == doctest::Approx(full(p, t)).epsilon(0.02));
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("low temperature validity windows") {
  const auto w0 = validity_window(ReducedParams(1.0, 0.0, 0.01), LimitRegime::low_t);
  REQUIRE(w0.has_value());
  CHECK(w0->t_lo > 1.0);
  CHECK(w0->t_hi < 100.0);
  const auto w100 = validity_window(ReducedParams(1.0, 100.0, 0.01), LimitRegime::low_t);
  REQUIRE(w100.has_value());
  CHECK(w100->t_lo < 0.1);
  CHECK_FALSE(validity_window(ReducedParams(1.0, 1.0, 0.01), LimitRegime::low_t).has_value());
  // Hotter baths shrink the window from above.
  const auto hot = validity_window(ReducedParams(1.0, 0.0, 0.02), LimitRegime::low_t);
  CHECK((!hot || hot->t_hi < w0->t_hi));
}

TEST_CASE("logarithmic growth") {
  const ReducedParams p(1.0, 0.0, 0.01);
  std::vector<double> x, y;
  for (int i = 0; i <= 50; ++i) {
    const double t = std::pow(10.0, i / 50.0);
    x.push_back(std::log(t));
    y.push_back(msd_low_temperature(p, t));
  }
  const Fit f = least_squares(x, y);
  CHECK(f.r2 >= 0.999);
  CHECK(f.slope == doctest::Approx(4.0 / kPi).epsilon(0.01));
}

TEST_CASE("linear growth at long times") {
  for (double wc : {0.0, 0.5, 5.0}) {
    const ReducedParams p(1.0, wc, 100.0);
    std::vector<double> x, y;
    for (double t = 10.0; t <= 20.0; t += 0.5) {
      x.push_back(t);
      y.push_back(msd_high_temperature(p, t));
    }
    const Fit f = least_squares(x, y);
    CHECK(f.slope == doctest::Approx(2.0 * 100.0 / (1.0 + wc * wc)).epsilon(0.005));
  }
}
