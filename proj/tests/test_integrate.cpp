#include <doctest.h>

#include <cmath>
#include <complex>

#include "qbm/integrate.hpp"

using namespace qbm;

TEST_CASE("kronrod rule integrates monomials through degree 31") {
  for (int k = 0; k <= 31; ++k) {
    const auto e = integrate::gauss_kronrod21([k](double x) { return std::pow(x, k); }, 0.0, 1.0);
    CHECK(e.value == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
  }
  // Degree 32 is outside its exact range.
  const auto e = integrate::gauss_kronrod21([](double x) { return std::pow(x, 32); }, -1.0, 1.0);
  CHECK(std::abs(e.value - 2.0 / 33.0) > 1e-15);
}

TEST_CASE("embedded gauss rule is exact through degree 19") {
  // The estimate is |K - G| scaled; it collapses to the rounding floor while
  // both rules are exact.
  for (int k = 0; k <= 19; ++k) {
    const auto e = integrate::gauss_kronrod21([k](double x) { return std::pow(x, k); }, -1.0, 1.0);
    CHECK(e.error < 1e-13);
  }
  const auto e = integrate::gauss_kronrod21([](double x) { return std::pow(x, 20); }, -1.0, 1.0);
  CHECK(e.error > 1e-10);
}

TEST_CASE("adaptive integration") {
  const integrate::Options opt;
  const auto s = integrate::adaptive([](double x) { return std::sin(x); }, 0.0, M_PI, opt);
  CHECK(s.converged);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-12));

  const auto r = integrate::adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));

  const auto c = integrate::adaptive(
      [](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0, M_PI, opt);
  CHECK(std::abs(c.value - std::complex<double>(0.0, 2.0)) < 1e-12);

  integrate::Options tight;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 0.0;
  tight.max_subdivisions = 20;
  const auto f = integrate::adaptive([](double x) { return std::log(x); }, 0.0, 1.0, tight);
  CHECK_FALSE(f.converged);
  CHECK(f.subdivisions == 20);
}
