#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qbm/analysis.hpp"
#include "qbm/error.hpp"
#include "qbm/figures.hpp"
#include "qbm/limits.hpp"

using namespace qbm;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> grid(double end, std::size_t n) { return linear_grid(0.0, end, n); }

std::vector<double> high_t_curve(double wc, const std::vector<double>& t) {
  const ReducedParams p(1.0, wc, 100.0);
  std::vector<double> v;
  for (double x : t) v.push_back(msd_high_temperature(p, x));
  return v;
}

SeriesRequest high_t_request() {
  SeriesRequest r;
  r.params = ReducedParams(1.0, 0.0, 100.0);
  r.route = Route::high_t;
  return r;
}

}  // namespace

TEST_CASE("verdict names") {
  CHECK(to_string(Verdict::monotonic) == "monotonic");
  CHECK(to_string(Verdict::damped_oscillatory) == "damped_oscillatory");
}

TEST_CASE("input checks") {
  const auto t = grid(1.0, 15);
  const std::vector<double> v(15, 1.0);
  CHECK_THROWS_AS(classify_msd(t, v), InsufficientData);
  auto t2 = grid(1.0, 20);
  std::vector<double> v2(20, 1.0);
  v2[3] = NAN;
  CHECK_THROWS_AS(classify_msd(t2, v2), InvariantError);
  v2[3] = 1.0;
  t2[5] = t2[4];
  CHECK_THROWS_AS(classify_msd(t2, v2), InvariantError);
}

TEST_CASE("straight line is monotonic") {
  const auto t = grid(5.0, 100);
  const auto c = classify_msd(t, t);
  CHECK(c.verdict == Verdict::monotonic);
  CHECK(c.n_local_maxima == 0);
  CHECK_FALSE(c.first_max_time.has_value());
  CHECK_FALSE(c.period_estimate.has_value());
}

TEST_CASE("flat top counts once") {
  const auto t = grid(1.0, 20);
  std::vector<double> v(20, 0.0);
  for (int i = 0; i < 20; ++i) v[i] = i < 8 ? i : (i < 12 ? 8.0 : 19.0 - i);
  const auto c = classify_msd(t, v);
  CHECK(c.n_local_maxima == 1);
  CHECK(*c.first_max_time == doctest::Approx(0.5 * (t[8] + t[11])));
}

TEST_CASE("damped sine recovers its period") {
  const auto t = grid(20.0, 2000);
  std::vector<double> v;
  for (double x : t) v.push_back(5.0 - 3.0 * std::exp(-0.1 * x) * std::cos(2.0 * x));
  const auto c = classify_msd(t, v);
  CHECK(c.verdict == Verdict::damped_oscillatory);
  CHECK(*c.period_estimate == doctest::Approx(kPi).epsilon(1e-3));
}

TEST_CASE("prominence threshold") {
  const auto t = grid(1.0, 200);
  std::vector<double> v;
  for (int i = 0; i < 200; ++i) v.push_back(i);
  // Dips far below 1e-3 of the range are noise, not oscillation.
  v[50] = 48.99;
  v[120] = 118.99;
  CHECK(classify_msd(t, v).verdict == Verdict::monotonic);
  CHECK(classify_msd(t, v, 1e-7).verdict == Verdict::damped_oscillatory);
}

TEST_CASE("high temperature curves") {
  const auto t = grid(10.0, 512);
  CHECK(classify_msd(t, high_t_curve(0.0, t)).verdict == Verdict::monotonic);
  const auto t2 = grid(10.0, 2048);
  const auto c = classify_msd(t2, high_t_curve(10.0, t2));
  CHECK(c.verdict == Verdict::damped_oscillatory);
  CHECK(*c.first_max_time < 2.0 * kPi / 10.0 * 1.5);
  // Drift shifts the maxima; a few percent off 2 pi / wc.
  CHECK(*c.period_estimate == doctest::Approx(2.0 * kPi / 10.0).epsilon(0.05));
}

TEST_CASE("classification is scale invariant") {
  const auto t = grid(10.0, 1024);
  for (double wc : {0.1, 3.0, 10.0}) {
    const auto v = high_t_curve(wc, t);
    std::vector<double> scaled, shifted;
    for (double x : v) {
      scaled.push_back(1e6 * x);
      shifted.push_back(x + 5.0);
    }
    const auto a = classify_msd(t, v);
    CHECK(classify_msd(t, scaled).verdict == a.verdict);
    CHECK(classify_msd(t, scaled).max_times == a.max_times);
    CHECK(classify_msd(t, shifted).n_local_maxima == a.n_local_maxima);
  }
}

TEST_CASE("classification is stable under grid refinement") {
  for (int id = 1; id <= 4; ++id) {
    const auto spec = figure_spec(id);
    const auto coarse = evaluate_series(spec.request, linear_grid(0.0, 10.0, 1024));
    const auto fine = evaluate_series(spec.request, linear_grid(0.0, 10.0, 2048));
    const auto a = classify_msd(coarse), b = classify_msd(fine);
    CAPTURE(id);
    CHECK(a.verdict == b.verdict);
    CHECK(a.n_local_maxima == b.n_local_maxima);
  }
}

TEST_CASE("transition between the grid ends") {
  const std::vector<double> g{0.1, 10.0};
  const auto hot = find_transition(high_t_request(), g, 0.0, 10.0, 1024);
  REQUIRE(hot.has_value());
  CHECK(*hot == 10.0);

  const std::vector<double> weak{0.01, 0.05, 0.1};
  CHECK_FALSE(find_transition(high_t_request(), weak, 0.0, 10.0, 1024).has_value());

  SeriesRequest cold;
  cold.params = ReducedParams(1.0, 0.0, 0.01);
  cold.route = Route::low_t;
  const auto low = find_transition(cold, g, 0.01, 10.0, 1024);
  REQUIRE(low.has_value());
  CHECK(*low == 10.0);
}

TEST_CASE("transition scan records every grid point") {
  const std::vector<double> g{0.5, 2.0, 8.0, 16.0};
  const auto scan = scan_transition(high_t_request(), g, 0.0, 10.0, 1024);
  REQUIRE(scan.points.size() == g.size());
  REQUIRE(scan.transition.has_value());
  for (const auto& pt : scan.points) {
    CHECK((pt.classification.verdict == Verdict::damped_oscillatory) == (pt.omega_c >= *scan.transition));
  }
}

TEST_CASE("transition scan errors") {
  const std::vector<double> down{10.0, 0.1};
  CHECK_THROWS_AS(find_transition(high_t_request(), down, 0.0, 10.0, 1024), ConfigError);
  SeriesRequest sim = high_t_request();
  sim.route = Route::simulate;
  const std::vector<double> g{0.1, 10.0};
  CHECK_THROWS_AS(find_transition(sim, g, 0.0, 10.0, 1024), ConfigError);
}

TEST_CASE("return to monotonic is reported") {
  // 16 samples alias the faster oscillation into a smooth curve.
  const std::vector<double> g{4.75, 5.75};
  CHECK_THROWS_AS(scan_transition(high_t_request(), g, 0.0, 10.0, 16), NonMonotoneFlip);
}
