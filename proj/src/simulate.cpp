#include "qbm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qbm/error.hpp"
#include "qbm/parallel.hpp"

namespace qbm {

namespace {

constexpr std::size_t kBlock = 256;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

VelocityPropagator::VelocityPropagator(double gamma, double omega_c, double dt) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvariantError("gamma must be >= 0");
  if (!(omega_c >= 0.0) || !std::isfinite(omega_c)) throw InvariantError("omega_c must be >= 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvariantError("dt must be > 0");
  const double decay = std::exp(-gamma * dt);
  a_ = decay * std::cos(omega_c * dt);
  b_ = decay * std::sin(omega_c * dt);
  decay2_ = -std::expm1(-2.0 * gamma * dt);
}

double VelocityPropagator::increment_sigma(double variance) const noexcept {
  return std::sqrt(variance * decay2_);
}

Vec2 step_velocity(const Vec2& v, const ReducedParams& params, double dt, const Vec2& noise) {
  return VelocityPropagator(params.gamma(), params.omega_c(), dt).apply(v, noise);
}

void SimConfig::validate() const {
  const double rate = std::max(params.gamma(), params.omega_c());
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be > 0");
  if (dt > 0.05 / rate * (1.0 + 1e-12)) {
    throw ConfigError("dt must be <= 0.05 / max(gamma, omega_c)");
  }
  if (n_steps < 1) throw ConfigError("n_steps must be >= 1");
  if (n_particles < 1) throw ConfigError("n_particles must be >= 1");
  if (record_stride < 1) throw ConfigError("record_stride must be >= 1");
}

std::uint64_t particle_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

EnsembleStats run_ensemble(const SimConfig& cfg) {
  cfg.validate();
  const std::size_t n_rec = cfg.n_steps / cfg.record_stride + 1;
  const VelocityPropagator prop(cfg.params.gamma(), cfg.params.omega_c(), cfg.dt);
  const double variance = cfg.params.thermal_velocity_variance();
  const double sigma_v = std::sqrt(variance);
  const double sigma_dv = prop.increment_sigma(variance);
  const double half_dt = 0.5 * cfg.dt;

  const std::size_t n_blocks = (cfg.n_particles + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> sums(n_blocks);
  std::vector<std::vector<double>> squares(n_blocks);

  parallel_for(n_blocks, [&](std::size_t b) {
    std::vector<double> s(n_rec, 0.0);
    std::vector<double> q(n_rec, 0.0);
    const std::size_t end = std::min(cfg.n_particles, (b + 1) * kBlock);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      std::mt19937_64 rng(particle_seed(cfg.seed, i));
      Vec2 v;
      if (cfg.initial_velocity) {
        v = *cfg.initial_velocity;
      } else {
        v[0] = sigma_v * normal(rng);
        v[1] = sigma_v * normal(rng);
      }
      double x = 0.0;
      double y = 0.0;
      std::size_t rec = 1;
      for (std::size_t step = 1; step <= cfg.n_steps; ++step) {
        Vec2 dv{0.0, 0.0};
        if (sigma_dv > 0.0) {
          dv[0] = sigma_dv * normal(rng);
          dv[1] = sigma_dv * normal(rng);
        }
        const Vec2 w = prop.apply(v, dv);
        x += half_dt * (v[0] + w[0]);
        y += half_dt * (v[1] + w[1]);
        v = w;
        if (step % cfg.record_stride == 0) {
          const double r2 = x * x + y * y;
          s[rec] += r2;
          q[rec] += r2 * r2;
          ++rec;
        }
      }
      normal.reset();
    }
    sums[b] = std::move(s);
    squares[b] = std::move(q);
  });

  std::vector<double> total(n_rec, 0.0);
  std::vector<double> total_sq(n_rec, 0.0);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    for (std::size_t j = 0; j < n_rec; ++j) {
      total[j] += sums[b][j];
      total_sq[j] += squares[b][j];
    }
  }

  EnsembleStats out;
  out.times.resize(n_rec);
  out.msd_mean.resize(n_rec);
  out.msd_stderr.resize(n_rec);
  const double n = static_cast<double>(cfg.n_particles);
  for (std::size_t j = 0; j < n_rec; ++j) {
    out.times[j] = static_cast<double>(j * cfg.record_stride) * cfg.dt;
    const double mean = total[j] / n;
    out.msd_mean[j] = mean;
    if (cfg.n_particles > 1) {
      const double var = std::max(0.0, (total_sq[j] - n * mean * mean) / (n - 1.0));
      out.msd_stderr[j] = std::sqrt(var / n);
    } else {
      out.msd_stderr[j] = 0.0;
    }
  }
  return out;
}

}  // namespace qbm
