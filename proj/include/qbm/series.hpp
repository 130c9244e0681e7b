#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qbm/model.hpp"
#include "qbm/quadrature.hpp"

namespace qbm {

enum class Route { exact, quadrature, high_t, low_t, simulate };

std::string to_string(Route route);
/// Throws ConfigError for an unknown name.
Route parse_route(const std::string& name);

/// Per-point provenance.
enum class PointFlag {
  none,
  quadrature_fallback,  ///< exact route answered by quadrature at small t
  pole_coincidence,     ///< exact route answered by quadrature at degenerate poles
  outside_validity,     ///< asymptotic formula used outside its validity window
};

std::string to_string(PointFlag flag);
PointFlag parse_point_flag(const std::string& name);

using ParamsEcho = std::vector<std::pair<std::string, std::string>>;

struct MsdSeries {
  std::vector<double> times;
  std::vector<double> values;
  Route route = Route::quadrature;
  ParamsEcho params_echo;
  std::vector<PointFlag> flags;

  /// Throws InvariantError unless sizes agree, times ascend strictly and
  /// values are finite and >= 0. The low_t route may carry negative values
  /// on points flagged outside_validity.
  void validate() const;

  /// Value of a params_echo key, or "" when absent.
  std::string echo(const std::string& key) const;
};

struct SeriesRequest {
  ReducedParams params{1.0, 0.0, 1.0};
  KernelModel kernel = OhmicKernel{1.0};
  Route route = Route::quadrature;
  TemperatureMode mode = TemperatureMode::full_quantum;  ///< quadrature route only
  QuadratureSettings settings{};
};

/// Checks route/kernel/parameter compatibility; throws ConfigError.
void validate_request(const SeriesRequest& request, std::span<const double> times);

/// Evaluates the request on `times` (grid points run concurrently, results
/// ordered by index). The simulate route is not handled here.
MsdSeries evaluate_series(const SeriesRequest& request, std::span<const double> times);

/// Resolved parameters in a fixed order.
ParamsEcho describe_request(const SeriesRequest& request);

/// n points from start to end inclusive; log spacing requires start > 0.
std::vector<double> linear_grid(double start, double end, std::size_t n);
std::vector<double> log_grid(double start, double end, std::size_t n);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace qbm
