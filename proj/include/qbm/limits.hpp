#pragma once

#include <optional>

#include "qbm/model.hpp"

namespace qbm {

enum class LimitRegime { high_t, low_t };

/// Where an asymptotic formula is trusted for a given parameter set.
struct LimitDomain {
  LimitRegime regime;
  /// high_t: minimum Omega_th / max(gamma, omega_c, 1/t).
  /// low_t: maximum relative size of the neglected terms.
  double bound;
  double t_lo;
  double t_hi;  ///< may be +inf
};

struct LimitEvaluation {
  double msd;
  bool within_validity;
};

/// High-temperature MSD
///   (2 hbar Omega_th / m) { gamma t / s^2 - (gamma^2 - wc^2) / s^4
///     + [(gamma^2 - wc^2) cos(wc t) - 2 gamma wc sin(wc t)] e^{-gamma t} / s^4 }
/// with s^2 = gamma^2 + wc^2. Exactly 0 at t = 0. Throws DomainError for
/// t < 0 or omega_th == 0.
double msd_high_temperature(const ReducedParams& params, double t);

/// Low-temperature MSD
///   (2 gamma hbar / (pi m s^2)) { 2 ln(s t) + 2 gamma_0 + pi wc / gamma
///     - pi e^{-gamma t} [(wc / gamma) cos(wc t) + sin(wc t)] }.
/// Negative at small t (it is an asymptote). Throws DomainError for t <= 0.
double msd_low_temperature(const ReducedParams& params, double t);

/// Omega_th / max(gamma, omega_c, 1/t) >= 10 (1/t dropped at t = 0).
bool high_temperature_valid(const ReducedParams& params, double t);

/// Sum of the leading neglected terms of the low-temperature formula: the
/// field offset of its constant, the 1/t^2 tail and the thermal correction.
double low_temperature_error_bound(const ReducedParams& params, double t);

/// low_temperature_error_bound <= 1% of |msd_low_temperature|.
bool low_temperature_valid(const ReducedParams& params, double t);

LimitEvaluation evaluate_high_temperature(const ReducedParams& params, double t);
LimitEvaluation evaluate_low_temperature(const ReducedParams& params, double t);

/// Hull of the times at which the formula is flagged valid, located on a
/// log grid over [1e-6, 1e8] / gamma and refined by bisection. Empty when
/// no time qualifies.
std::optional<LimitDomain> validity_window(const ReducedParams& params, LimitRegime regime);

}  // namespace qbm
