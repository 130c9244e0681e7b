#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qbm/series.hpp"

namespace qbm {

inline constexpr double kDefaultProminence = 1e-3;

enum class Verdict { monotonic, damped_oscillatory };

std::string to_string(Verdict v);

struct RegimeClassification {
  Verdict verdict = Verdict::monotonic;
  std::size_t n_local_maxima = 0;
  std::optional<double> first_max_time;
  std::optional<double> period_estimate;  ///< mean spacing; needs >= 2 maxima
  std::vector<double> max_times;
};

/// Interior local maxima whose prominence (height above the higher of the two
/// bases, each the lowest point between the peak and the nearest higher
/// sample or the series end) is at least prominence_rel * (max - min).
/// Throws InsufficientData below 16 samples and InvariantError for
/// non-ascending times or non-finite values.
RegimeClassification classify_msd(std::span<const double> times, std::span<const double> values,
                                  double prominence_rel = kDefaultProminence);
RegimeClassification classify_msd(const MsdSeries& series,
                                  double prominence_rel = kDefaultProminence);

struct TransitionPoint {
  double omega_c;
  RegimeClassification classification;
};

struct TransitionScan {
  std::vector<TransitionPoint> points;
  std::optional<double> transition;  ///< first oscillatory omega_c
};

/// Classifies the route's MSD on `samples` linear points of t_window at each
/// omega_c of the ascending grid. The transition is the smallest oscillatory
/// grid value, all smaller values being monotonic. Throws NonMonotoneFlip
/// when a monotonic point follows an oscillatory one, ConfigError for an
/// unsupported route or a non-ascending grid.
TransitionScan scan_transition(const SeriesRequest& base, std::span<const double> omega_c_grid,
                               double t_start, double t_end, std::size_t samples,
                               double prominence_rel = kDefaultProminence);

std::optional<double> find_transition(const SeriesRequest& base,
                                      std::span<const double> omega_c_grid, double t_start,
                                      double t_end, std::size_t samples,
                                      double prominence_rel = kDefaultProminence);

}  // namespace qbm
