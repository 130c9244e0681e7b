#include "qbm/limits.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "qbm/error.hpp"
#include "qbm/specfun.hpp"

namespace qbm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHighRatio = 10.0;
constexpr double kLowBudget = 0.01;

// (e^x - 1 - x) / x^2
std::complex<double> phi2(std::complex<double> x) {
  if (std::abs(x) < 0.5) {
    std::complex<double> term = 0.5;
    std::complex<double> sum = term;
    for (int k = 1; k < 30; ++k) {
      term *= x / static_cast<double>(k + 2);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (-specfun::one_minus_exp(x) - x) / (x * x);
}

// ln(sinh x / x) for x >= 0
double log_sinhc(double x) {
  if (x < 1e-4) return x * x / 6.0;
  if (x > 20.0) return x - std::log(2.0 * x) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x) / x);
}

}  // namespace

double msd_high_temperature(const ReducedParams& p, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("msd_high_temperature requires t >= 0");
  if (!(p.omega_th() > 0.0)) throw DomainError("msd_high_temperature requires omega_th > 0");
  if (t == 0.0) return 0.0;
  // The braced sum is Re[(lambda t - 1 + e^{-lambda t}) / lambda^2], lambda = gamma - i wc.
  const std::complex<double> lambda(p.gamma(), -p.omega_c());
  const double bracket = t * t * phi2(-lambda * t).real();
  return std::max(2.0 * p.hbar() * p.omega_th() / p.mass() * bracket, 0.0);
}

double msd_low_temperature(const ReducedParams& p, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("msd_low_temperature requires t > 0");
  const double g = p.gamma();
  const double wc = p.omega_c();
  const double s2 = g * g + wc * wc;
  const double s = std::sqrt(s2);
  const double osc = std::exp(-g * t) * ((wc / g) * std::cos(wc * t) + std::sin(wc * t));
  const double brace = 2.0 * std::log(s * t) + 2.0 * specfun::euler_mascheroni() +
                       kPi * wc / g - kPi * osc;
  return 2.0 * g * p.hbar() / (kPi * p.mass() * s2) * brace;
}

bool high_temperature_valid(const ReducedParams& p, double t) {
  if (!(p.omega_th() > 0.0) || !(t >= 0.0)) return false;
  // Both sides vanish at t = 0.
  const double inv_t = t > 0.0 ? 1.0 / t : 0.0;
  return p.omega_th() / std::max({p.gamma(), p.omega_c(), inv_t}) >= kHighRatio;
}

double low_temperature_error_bound(const ReducedParams& p, double t) {
  if (!(t > 0.0)) throw DomainError("low_temperature_error_bound requires t > 0");
  const double g = p.gamma();
  const double wc = p.omega_c();
  const double s2 = g * g + wc * wc;
  const double unit = p.hbar() / p.mass();
  const double r = wc / g;
  // Exact zero-temperature constant has 2 r atan(r) where the formula has pi r.
  const double field = unit * (2.0 * g / (kPi * s2)) * r * (kPi - 2.0 * std::atan(r));
  const double h2 = unit * (4.0 * g / kPi) * (6.0 * wc * wc - 2.0 * g * g) / (s2 * s2 * s2);
  const double tail = std::abs(h2) / (2.0 * t * t);
  const double h0 = unit * 4.0 * g / (kPi * s2);
  const double thermal = h0 * log_sinhc(0.5 * kPi * p.omega_th() * t);
  return field + tail + thermal;
}

bool low_temperature_valid(const ReducedParams& p, double t) {
  if (!(t > 0.0)) return false;
  return low_temperature_error_bound(p, t) <= kLowBudget * std::abs(msd_low_temperature(p, t));
}

LimitEvaluation evaluate_high_temperature(const ReducedParams& p, double t) {
  return {msd_high_temperature(p, t), high_temperature_valid(p, t)};
}

LimitEvaluation evaluate_low_temperature(const ReducedParams& p, double t) {
  return {msd_low_temperature(p, t), low_temperature_valid(p, t)};
}

std::optional<LimitDomain> validity_window(const ReducedParams& p, LimitRegime regime) {
  auto valid = [&](double t) {
    return regime == LimitRegime::high_t ? high_temperature_valid(p, t)
                                         : low_temperature_valid(p, t);
  };
  const double lo_t = 1e-6 / p.gamma();
  const double hi_t = 1e8 / p.gamma();
  constexpr int kSteps = 700;
  const double ratio = std::pow(hi_t / lo_t, 1.0 / kSteps);
  int first = -1;
  int last = -1;
  double t = lo_t;
  for (int i = 0; i <= kSteps; ++i, t *= ratio) {
    if (valid(t)) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) return std::nullopt;

  // Boundary between an invalid point a and a valid point b.
  auto refine = [&](double a, double b) {
    for (int k = 0; k < 60; ++k) {
      const double m = std::sqrt(a * b);
      (valid(m) ? b : a) = m;
    }
    return b;
  };
  auto at = [&](int i) { return lo_t * std::pow(ratio, i); };
  const double t_lo = first == 0 ? lo_t : refine(at(first - 1), at(first));
  const double t_hi = last == kSteps ? std::numeric_limits<double>::infinity()
                                     : refine(at(last + 1), at(last));
  const double bound = regime == LimitRegime::high_t ? kHighRatio : kLowBudget;
  if (!(t_lo < t_hi)) return std::nullopt;
  return LimitDomain{regime, bound, t_lo, t_hi};
}

}  // namespace qbm
