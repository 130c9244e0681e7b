#pragma once

#include <string>

#include "qbm/series.hpp"

namespace qbm {

inline constexpr int kFigureCount = 8;
inline constexpr double kFigureTEnd = 10.0;
inline constexpr std::size_t kFigurePoints = 1024;

struct FigureSpec {
  int id;
  std::string regime;  ///< short description of the parameter regime
  SeriesRequest request;
};

/// Parameters of figure `id` (1..8), gamma = m = hbar = 1:
///   1-2 Ohmic, Omega_th = 100, high-temperature formula, omega_c = 0.1 / 10
///   3-4 Ohmic, Omega_th = 0.01, exact closed form, omega_c = 0.1 / 10
///   5-6 single relaxation (tau = 0.1), quadrature in high_t mode, Omega_th = 100
///   7-8 single relaxation (tau = 0.1), full quadrature, Omega_th = 0.01
/// Throws ConfigError for any other id.
FigureSpec figure_spec(int id);

/// The figure's MSD on t in [0, 10] at 1024 points.
MsdSeries figure_series(int id);

}  // namespace qbm
