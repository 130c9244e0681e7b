#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qbm/model.hpp"

namespace qbm {

using Vec2 = std::array<double, 2>;

/// Exact one-step map of the velocity process dv = (-gamma I + wc J) v dt + noise,
/// J v = (v_y, -v_x):
///   v' = e^{-gamma dt} [cos(wc dt) I + sin(wc dt) J] v + increment.
class VelocityPropagator {
 public:
  /// gamma >= 0, omega_c >= 0, dt > 0; throws InvariantError otherwise.
  VelocityPropagator(double gamma, double omega_c, double dt);

  Vec2 apply(const Vec2& v, const Vec2& increment = {0.0, 0.0}) const noexcept {
    return {a_ * v[0] + b_ * v[1] + increment[0], a_ * v[1] - b_ * v[0] + increment[1]};
  }

  /// Per-axis standard deviation of the increment for velocity variance
  /// `variance` at equilibrium: sqrt(variance (1 - e^{-2 gamma dt})).
  double increment_sigma(double variance) const noexcept;

 private:
  double a_;  // e^{-gamma dt} cos(wc dt)
  double b_;  // e^{-gamma dt} sin(wc dt)
  double decay2_;
};

Vec2 step_velocity(const Vec2& v, const ReducedParams& params, double dt, const Vec2& noise);

struct SimConfig {
  double dt = 0.01;
  std::size_t n_steps = 1000;
  std::size_t n_particles = 1000;
  std::uint64_t seed = 1;
  ReducedParams params{1.0, 0.0, 1.0};
  std::size_t record_stride = 1;  ///< record every k-th step
  /// Start every particle from this velocity instead of the Maxwell law.
  std::optional<Vec2> initial_velocity;

  /// Throws ConfigError unless dt > 0, dt <= 0.05 / max(gamma, omega_c),
  /// n_steps >= 1, n_particles >= 1 and record_stride >= 1.
  void validate() const;
};

struct EnsembleStats {
  std::vector<double> times;
  std::vector<double> msd_mean;
  std::vector<double> msd_stderr;
};

/// Independent random stream seed for particle `index`.
std::uint64_t particle_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Ensemble MSD <|r(t) - r(0)|^2> of the classical Langevin dynamics at
/// k_B T / m = hbar Omega_th / (2 m). Bit-identical for a fixed config,
/// whatever the thread count.
EnsembleStats run_ensemble(const SimConfig& config);

}  // namespace qbm
