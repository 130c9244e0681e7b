#include "qbm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qbm/error.hpp"

namespace qbm {

std::string to_string(Verdict v) {
  return v == Verdict::monotonic ? "monotonic" : "damped_oscillatory";
}

RegimeClassification classify_msd(std::span<const double> t, std::span<const double> v,
                                  double prominence_rel) {
  const std::size_t n = v.size();
  if (t.size() != n) throw InvariantError("times and values differ in length");
  if (n < 16) throw InsufficientData("classification needs at least 16 samples");
  if (!(prominence_rel > 0.0)) throw InvariantError("prominence_rel must be > 0");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(v[i]) || !std::isfinite(t[i])) throw InvariantError("non-finite sample");
    if (i > 0 && !(t[i] > t[i - 1])) throw InvariantError("times must ascend strictly");
  }
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double threshold = prominence_rel * (*hi - *lo);

  RegimeClassification out;
  std::size_t i = 1;
  while (i + 1 < n) {
    if (!(v[i] > v[i - 1])) {
      ++i;
      continue;
    }
    // Flat tops count once, at their midpoint.
    std::size_t j = i;
    while (j + 1 < n && v[j + 1] == v[i]) ++j;
    if (j + 1 >= n || !(v[j + 1] < v[i])) {
      i = j + 1;
      continue;
    }
    const double peak = v[i];
    double left_min = peak;
    for (std::size_t k = i; k-- > 0 && v[k] <= peak;) left_min = std::min(left_min, v[k]);
    double right_min = peak;
    for (std::size_t k = j + 1; k < n && v[k] <= peak; ++k) right_min = std::min(right_min, v[k]);
    const double prominence = peak - std::max(left_min, right_min);
    if (prominence >= threshold && prominence > 0.0) {
      out.max_times.push_back(0.5 * (t[i] + t[j]));
    }
    i = j + 1;
  }

  out.n_local_maxima = out.max_times.size();
  if (out.n_local_maxima > 0) {
    out.verdict = Verdict::damped_oscillatory;
    out.first_max_time = out.max_times.front();
  }
  if (out.n_local_maxima >= 2) {
    out.period_estimate = (out.max_times.back() - out.max_times.front()) /
                          static_cast<double>(out.n_local_maxima - 1);
  }
  return out;
}

RegimeClassification classify_msd(const MsdSeries& s, double prominence_rel) {
  return classify_msd(s.times, s.values, prominence_rel);
}

TransitionScan scan_transition(const SeriesRequest& base, std::span<const double> grid,
                               double t_start, double t_end, std::size_t samples,
                               double prominence_rel) {
  if (base.route == Route::simulate) throw ConfigError("transition scan needs a deterministic route");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("omega_c grid must ascend strictly");
  }
  const auto times = linear_grid(t_start, t_end, samples);
  TransitionScan scan;
  bool seen_oscillatory = false;
  for (double wc : grid) {
    SeriesRequest rq = base;
    rq.params = base.params.with_omega_c(wc);
    const auto series = evaluate_series(rq, times);
    auto c = classify_msd(series, prominence_rel);
    if (c.verdict == Verdict::damped_oscillatory) {
      if (!seen_oscillatory) scan.transition = wc;
      seen_oscillatory = true;
    } else if (seen_oscillatory) {
      std::ostringstream os;
      os << "classification returns to monotonic at omega_c=" << format_double(wc)
         << " after turning oscillatory at omega_c=" << format_double(*scan.transition);
      throw NonMonotoneFlip(os.str());
    }
    scan.points.push_back({wc, std::move(c)});
  }
  return scan;
}

std::optional<double> find_transition(const SeriesRequest& base, std::span<const double> grid,
                                      double t_start, double t_end, std::size_t samples,
                                      double prominence_rel) {
  return scan_transition(base, grid, t_start, t_end, samples, prominence_rel).transition;
}

}  // namespace qbm
