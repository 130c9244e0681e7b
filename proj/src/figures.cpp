#include "qbm/figures.hpp"

#include "qbm/error.hpp"

namespace qbm {

FigureSpec figure_spec(int id) {
  if (id < 1 || id > kFigureCount) {
    throw ConfigError("figure id must be in 1.." + std::to_string(kFigureCount));
  }
  const bool strong_field = id % 2 == 0;
  const bool high_t = id == 1 || id == 2 || id == 5 || id == 6;
  const bool ohmic = id <= 4;
  const double omega_c = strong_field ? 10.0 : 0.1;
  const double omega_th = high_t ? 100.0 : 0.01;

  FigureSpec f{id, "", {}};
  f.request.params = ReducedParams(1.0, omega_c, omega_th);
  f.request.kernel = ohmic ? make_ohmic(1.0) : make_single_relaxation(1.0, 0.1);
  if (ohmic) {
    f.request.route = high_t ? Route::high_t : Route::exact;
  } else {
    f.request.route = Route::quadrature;
    f.request.mode = high_t ? TemperatureMode::high_t : TemperatureMode::full_quantum;
  }
  f.regime = std::string(ohmic ? "ohmic" : "srt") + (high_t ? ", high T" : ", low T") +
             (strong_field ? ", omega_c >> gamma" : ", gamma >> omega_c");
  return f;
}

MsdSeries figure_series(int id) {
  const auto f = figure_spec(id);
  const auto times = linear_grid(0.0, kFigureTEnd, kFigurePoints);
  auto s = evaluate_series(f.request, times);
  s.params_echo.insert(s.params_echo.begin(), {{"figure", std::to_string(id)},
                                               {"regime", f.regime}});
  s.params_echo.emplace_back("t_start", "0");
  s.params_echo.emplace_back("t_end", format_double(kFigureTEnd));
  s.params_echo.emplace_back("n_points", std::to_string(kFigurePoints));
  s.params_echo.emplace_back("spacing", "linear");
  return s;
}

}  // namespace qbm
