#include "qbm/series.hpp"

#include <charconv>
#include <cmath>

#include "qbm/closedform.hpp"
#include "qbm/error.hpp"
#include "qbm/limits.hpp"
#include "qbm/parallel.hpp"

namespace qbm {

std::string to_string(Route route) {
  switch (route) {
    case Route::exact: return "exact";
    case Route::quadrature: return "quadrature";
    case Route::high_t: return "high_t";
    case Route::low_t: return "low_t";
    case Route::simulate: return "simulate";
  }
  return "quadrature";
}

Route parse_route(const std::string& name) {
  if (name == "exact") return Route::exact;
  if (name == "quadrature") return Route::quadrature;
  if (name == "high_t") return Route::high_t;
  if (name == "low_t") return Route::low_t;
  if (name == "simulate") return Route::simulate;
  throw ConfigError("unknown route '" + name +
                    "' (expected exact, quadrature, high_t, low_t, simulate)");
}

std::string to_string(PointFlag flag) {
  switch (flag) {
    case PointFlag::none: return "none";
    case PointFlag::quadrature_fallback: return "quadrature_fallback";
    case PointFlag::pole_coincidence: return "pole_coincidence";
    case PointFlag::outside_validity: return "outside_validity";
  }
  return "none";
}

PointFlag parse_point_flag(const std::string& name) {
  if (name == "none") return PointFlag::none;
  if (name == "quadrature_fallback") return PointFlag::quadrature_fallback;
  if (name == "pole_coincidence") return PointFlag::pole_coincidence;
  if (name == "outside_validity") return PointFlag::outside_validity;
  throw ConfigError("unknown fallback flag '" + name + "'");
}

void MsdSeries::validate() const {
  if (values.size() != times.size() || flags.size() != times.size()) {
    throw InvariantError("series columns differ in length");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw InvariantError("non-finite time");
    if (i > 0 && !(times[i] > times[i - 1])) throw InvariantError("times must ascend strictly");
    if (!std::isfinite(values[i])) throw InvariantError("non-finite MSD value");
    const bool may_be_negative = route == Route::low_t && flags[i] == PointFlag::outside_validity;
    if (values[i] < 0.0 && !may_be_negative) throw InvariantError("negative MSD value");
  }
}

std::string MsdSeries::echo(const std::string& key) const {
  for (const auto& [k, v] : params_echo) {
    if (k == key) return v;
  }
  return "";
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

ParamsEcho describe_request(const SeriesRequest& rq) {
  const auto& p = rq.params;
  ParamsEcho e{{"route", to_string(rq.route)},
               {"kernel", kernel_name(rq.kernel)}};
  if (const auto* s = std::get_if<SingleRelaxationKernel>(&rq.kernel)) {
    e.emplace_back("tau", format_double(s->tau));
  }
  e.emplace_back("gamma", format_double(p.gamma()));
  e.emplace_back("omega_c", format_double(p.omega_c()));
  e.emplace_back("omega_th", format_double(p.omega_th()));
  e.emplace_back("mass", format_double(p.mass()));
  e.emplace_back("hbar", format_double(p.hbar()));
  if (rq.route == Route::quadrature) e.emplace_back("mode", to_string(rq.mode));
  if (rq.route == Route::quadrature || rq.route == Route::exact) {
    e.emplace_back("rel_tol", format_double(rq.settings.rel_tol));
    e.emplace_back("abs_tol", format_double(rq.settings.abs_tol));
    e.emplace_back("max_subdivisions", std::to_string(rq.settings.max_subdivisions));
  }
  return e;
}

void validate_request(const SeriesRequest& rq, std::span<const double> times) {
  const bool ohmic = std::holds_alternative<OhmicKernel>(rq.kernel);
  if (std::abs(kernel_gamma(rq.kernel) - rq.params.gamma()) > 1e-12 * rq.params.gamma()) {
    throw ConfigError("kernel gamma differs from gamma");
  }
  try {
    rq.settings.validate();
  } catch (const InvariantError& e) {
    throw ConfigError(e.what());
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) throw ConfigError("times must be >= 0");
    if (i > 0 && !(times[i] > times[i - 1])) throw ConfigError("times must ascend strictly");
  }
  switch (rq.route) {
    case Route::exact:
      if (!ohmic) throw ConfigError("exact route requires the ohmic kernel");
      if (!(rq.params.omega_th() > 0.0)) {
        throw ConfigError("exact route requires omega_th > 0 (use quadrature or low_t)");
      }
      break;
    case Route::high_t:
      if (!ohmic) throw ConfigError("high_t route requires the ohmic kernel");
      if (!(rq.params.omega_th() > 0.0)) throw ConfigError("high_t route requires omega_th > 0");
      break;
    case Route::low_t:
      if (!ohmic) throw ConfigError("low_t route requires the ohmic kernel");
      if (!times.empty() && !(times.front() > 0.0)) {
        throw ConfigError("low_t route requires t > 0");
      }
      break;
    case Route::quadrature:
      if (rq.mode == TemperatureMode::high_t && !(rq.params.omega_th() > 0.0)) {
        throw ConfigError("high_t mode requires omega_th > 0");
      }
      break;
    case Route::simulate:
      throw ConfigError("simulate route is produced by the ensemble simulator");
  }
}

MsdSeries evaluate_series(const SeriesRequest& rq, std::span<const double> times) {
  validate_request(rq, times);
  MsdSeries out;
  out.route = rq.route;
  out.params_echo = describe_request(rq);
  out.times.assign(times.begin(), times.end());
  out.values.assign(times.size(), 0.0);
  out.flags.assign(times.size(), PointFlag::none);

  parallel_for(times.size(), [&](std::size_t i) {
    const double t = times[i];
    double& v = out.values[i];
    PointFlag& f = out.flags[i];
    switch (rq.route) {
      case Route::exact: {
        if (t == 0.0) {
          v = 0.0;
          f = PointFlag::quadrature_fallback;
          break;
        }
        const auto r = msd_exact_ohmic(rq.params, t);
        v = r.value;
        if (r.fallback == ExactFallback::small_t) f = PointFlag::quadrature_fallback;
        if (r.fallback == ExactFallback::pole_coincidence) f = PointFlag::pole_coincidence;
        break;
      }
      case Route::quadrature:
        v = msd_quadrature(rq.params, rq.kernel, t, rq.mode, rq.settings);
        break;
      case Route::high_t: {
        const auto r = evaluate_high_temperature(rq.params, t);
        v = r.msd;
        if (!r.within_validity) f = PointFlag::outside_validity;
        break;
      }
      case Route::low_t: {
        const auto r = evaluate_low_temperature(rq.params, t);
        v = r.msd;
        if (!r.within_validity) f = PointFlag::outside_validity;
        break;
      }
      case Route::simulate:
        break;
    }
  });
  return out;
}

std::vector<double> linear_grid(double start, double end, std::size_t n) {
  if (n < 2) throw ConfigError("n_points must be >= 2");
  if (!(end > start)) throw ConfigError("t_end must exceed t_start");
  std::vector<double> g(n);
  const double h = (end - start) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = start + h * static_cast<double>(i);
  g.back() = end;
  return g;
}

std::vector<double> log_grid(double start, double end, std::size_t n) {
  if (!(start > 0.0)) throw ConfigError("log spacing requires t_start > 0");
  if (n < 2) throw ConfigError("n_points must be >= 2");
  if (!(end > start)) throw ConfigError("t_end must exceed t_start");
  std::vector<double> g(n);
  const double a = std::log(start);
  const double h = (std::log(end) - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(a + h * static_cast<double>(i));
  g.front() = start;
  g.back() = end;
  return g;
}

}  // namespace qbm
