#include "qbm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qbm/error.hpp"
#include "qbm/integrate.hpp"
#include "qbm/specfun.hpp"

namespace qbm {

namespace {

constexpr double kPi = std::numbers::pi;

// Spectral weight for omega > 0.
double thermal_weight(TemperatureMode mode, double omega, double omega_th) {
  switch (mode) {
    case TemperatureMode::full_quantum:
      if (omega_th == 0.0) return 1.0;
      return 1.0 / std::tanh(omega / omega_th);
    case TemperatureMode::high_t:
      return omega_th / omega;
    case TemperatureMode::low_t:
      return 1.0;
  }
  return 1.0;
}

void check_inputs(const ReducedParams& p, const KernelModel& k, double t, TemperatureMode mode) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
  if (mode == TemperatureMode::high_t && p.omega_th() == 0.0) {
    throw DomainError("high_t mode requires omega_th > 0");
  }
  const double kg = kernel_gamma(k);
  if (std::abs(kg - p.gamma()) > 1e-12 * p.gamma()) {
    throw InvariantError("kernel friction differs from params.gamma");
  }
}

// Natural frequency scales of the integrand, used as breakpoints.
std::vector<double> natural_scales(const ReducedParams& p, const KernelModel& k,
                                   TemperatureMode mode) {
  const double g = p.gamma();
  const double wc = p.omega_c();
  std::vector<double> s{g};
  if (wc > 0.0) {
    s.push_back(wc);
    s.push_back(wc + g);
    if (wc > g) s.push_back(wc - g);
  }
  if (mode == TemperatureMode::full_quantum && p.omega_th() > 0.0) s.push_back(p.omega_th());
  if (const auto* srt = std::get_if<SingleRelaxationKernel>(&k)) s.push_back(1.0 / srt->tau);
  return s;
}

// Wynn epsilon extrapolation of a sequence of partial sums.
double wynn_epsilon(std::span<const double> s) {
  std::vector<double> prev(s.size() + 1, 0.0);
  std::vector<double> cur(s.begin(), s.end());
  double best = s.back();
  for (int col = 1; cur.size() > 1; ++col) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t k = 0; k < next.size(); ++k) {
      const double d = cur[k + 1] - cur[k];
      if (d == 0.0 || !std::isfinite(d)) return best;
      next[k] = prev[k + 1] + 1.0 / d;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (col % 2 == 0) best = cur.back();
  }
  return best;
}

// int_a^inf f(omega) cos(omega t) d omega for smooth decaying f, with a a
// multiple of the period: half-period panels, Wynn-accelerated.
template <class F>
double oscillatory_tail(const F& f, double a, double t, double tol, std::size_t budget) {
  const double half = kPi / t;
  auto panel_fn = [&](double w) { return f(w) * std::cos(w * t); };
  std::vector<double> partial;
  double sum = 0.0;
  double est_prev = NAN;
  double est_prev2 = NAN;
  constexpr std::size_t kMaxPanels = 20000;
  for (std::size_t k = 0; k < kMaxPanels; ++k) {
    const double lo = a + static_cast<double>(k) * half;
    const double hi = lo + half;
    auto e = integrate::gauss_kronrod21(panel_fn, lo, hi);
    double term = e.value;
    if (e.error > 1e-2 * tol) {
      term = integrate::adaptive(panel_fn, lo, hi, {1e-3 * tol, 0.0, budget}).value;
    }
    sum += term;
    partial.push_back(sum);
    if (k >= 2 && std::abs(term) < 1e-3 * tol) return sum;
    if (partial.size() >= 6) {
      const std::size_t window = std::min<std::size_t>(partial.size(), 24);
      const double est = wynn_epsilon(std::span<const double>(partial).last(window));
      if (std::abs(est - est_prev) <= tol && std::abs(est_prev - est_prev2) <= tol) return est;
      est_prev2 = est_prev;
      est_prev = est;
    }
  }
  throw ConvergenceError("oscillatory tail did not converge", std::abs(est_prev - est_prev2), tol);
}

[[noreturn]] void throw_convergence(const char* what, double achieved, double requested) {
  std::ostringstream os;
  os.precision(3);
  os << what << ": achieved error " << achieved << " > requested " << requested;
  throw ConvergenceError(os.str(), achieved, requested);
}

}  // namespace

std::string to_string(TemperatureMode mode) {
  switch (mode) {
    case TemperatureMode::full_quantum: return "full";
    case TemperatureMode::high_t: return "high_t";
    case TemperatureMode::low_t: return "low_t";
  }
  return "full";
}

TemperatureMode parse_temperature_mode(const std::string& s) {
  if (s == "full" || s == "full_quantum") return TemperatureMode::full_quantum;
  if (s == "high_t") return TemperatureMode::high_t;
  if (s == "low_t") return TemperatureMode::low_t;
  throw ConfigError("unknown temperature mode '" + s + "' (expected full, high_t, low_t)");
}

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw InvariantError("rel_tol must be in (0, 1e-3]");
  if (!(abs_tol >= 0.0)) throw InvariantError("abs_tol must be >= 0");
  if (max_subdivisions < 100) throw InvariantError("max_subdivisions must be >= 100");
}

double msd_spectrum(const ReducedParams& p, const KernelModel& k, double omega,
                    TemperatureMode mode) {
  const auto kw = kernel_fourier(k, omega);
  const double re = kw.real();
  const double u = omega - kw.imag();
  const double wc = p.omega_c();
  const double numer = u * u + wc * wc + re * re;
  const double dm = u - wc;
  const double dp = u + wc;
  const double denom = (dm * dm + re * re) * (dp * dp + re * re);
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw DenominatorZero("MSD spectrum denominator vanished");
  }
  const double pref = 4.0 * p.hbar() / (kPi * p.mass());
  return pref * thermal_weight(mode, omega, p.omega_th()) * re * numer / (omega * denom);
}

double msd_integrand(const ReducedParams& p, const KernelModel& k, double omega, double t,
                     TemperatureMode mode) {
  check_inputs(p, k, t, mode);
  if (t == 0.0) return 0.0;
  if (omega == 0.0) {
    // (1 - cos wt) / w^2 -> t^2/2 and w * weight -> Omega_th (0 for sign weight).
    if (mode == TemperatureMode::low_t || p.omega_th() == 0.0) return 0.0;
    const double re0 = kernel_fourier(k, 0.0).real();
    const double n0 = p.omega_c() * p.omega_c() + re0 * re0;
    const double pref = 4.0 * p.hbar() / (kPi * p.mass());
    return pref * re0 * p.omega_th() * 0.5 * t * t / n0;
  }
  const double s = std::sin(0.5 * omega * t);
  return msd_spectrum(p, k, omega, mode) * 2.0 * s * s;
}

double msd_quadrature(const ReducedParams& p, const KernelModel& k, double t,
                      TemperatureMode mode, const QuadratureSettings& settings) {
  settings.validate();
  check_inputs(p, k, t, mode);
  if (t == 0.0) return 0.0;

  const double period = 2.0 * kPi / t;
  const auto scales = natural_scales(p, k, mode);
  const double top = *std::max_element(scales.begin(), scales.end());
  const double n_periods = std::max(1.0, std::ceil(4.0 * top / period));
  if (n_periods > 5e6) {
    throw ConvergenceError("t beyond the operating range of the panel quadrature", INFINITY,
                           settings.rel_tol);
  }
  const double cut = n_periods * period;

  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(n_periods) + scales.size() + 1);
  for (double i = 0.0; i <= n_periods; i += 1.0) pts.push_back(i * period);
  pts.back() = cut;
  for (double s : scales) {
    if (s < cut) pts.push_back(s);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto spectrum = [&](double w) { return msd_spectrum(p, k, w, mode); };
  auto body = [&](double w) {
    const double s = std::sin(0.5 * w * t);
    return spectrum(w) * 2.0 * s * s;
  };

  const double part_tol = 0.25 * settings.rel_tol;
  const auto head = integrate::adaptive(body, std::span<const double>(pts),
                                        {0.25 * settings.abs_tol, part_tol,
                                         settings.max_subdivisions});
  if (!head.converged) {
    throw_convergence("msd_quadrature", head.error,
                      std::max(settings.abs_tol, settings.rel_tol * std::abs(head.value)));
  }

  // Beyond the cut: int S - int S cos(wt). The first is mapped onto (0, 1].
  const double tail_tol = std::max(settings.abs_tol, part_tol * std::abs(head.value));
  auto mapped = [&](double u) {
    const double w = cut / u;
    return spectrum(w) * cut / (u * u);
  };
  const auto smooth = integrate::adaptive(mapped, 0.0, 1.0,
                                          {tail_tol, part_tol, settings.max_subdivisions});
  if (!smooth.converged) throw_convergence("msd_quadrature tail", smooth.error, tail_tol);
  const double osc = oscillatory_tail(spectrum, cut, t, tail_tol, settings.max_subdivisions);

  const double total = head.value + smooth.value - osc;
  return std::max(total, 0.0);
}

std::complex<double> msd_quadrature_two_sided(const ReducedParams& p, const KernelModel& k,
                                              double t, TemperatureMode mode,
                                              const QuadratureSettings& settings) {
  using C = std::complex<double>;
  settings.validate();
  check_inputs(p, k, t, mode);
  if (t == 0.0) return 0.0;

  const double wc = p.omega_c();
  const double pref = 2.0 * p.hbar() / (kPi * p.mass());
  // Odd thermal weight on the whole real line.
  auto weight = [&](double w) {
    const double sgn = w > 0.0 ? 1.0 : -1.0;
    return sgn * thermal_weight(mode, std::abs(w), p.omega_th());
  };
  // Unfolded integrand without the (1 - e^{-iwt}) factor.
  auto base = [&](double w) {
    const C kw = kernel_fourier(k, w);
    const C a = w + C(0.0, 1.0) * kw;
    const double numer = std::norm(a) + wc * wc;
    const double denom = std::norm(a * a - wc * wc);
    return pref * kw.real() * numer * weight(w) / (w * denom);
  };
  // f(w) + f(-w) on (0, cut], then the non-oscillating remainder beyond it.
  auto pair = [&](double w) {
    const C e = specfun::one_minus_exp(C(0.0, -w * t));
    return base(w) * e + base(-w) * std::conj(e);
  };
  const auto scales = natural_scales(p, k, mode);
  const double top = *std::max_element(scales.begin(), scales.end());
  const double period = 2.0 * kPi / t;
  const double cut = period * std::ceil(2000.0 * top / period);
  std::vector<double> pts{0.0};
  for (double s : scales) pts.push_back(s);
  for (double w = 8.0 * top; w < cut; w *= 2.0) pts.push_back(w);
  pts.push_back(cut);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const integrate::Options opt{settings.abs_tol, settings.rel_tol,
                               20 * settings.max_subdivisions};
  const auto head = integrate::adaptive(pair, std::span<const double>(pts), opt);
  if (!head.converged) throw_convergence("two-sided reference", head.error, settings.rel_tol);
  auto mapped = [&](double u) {
    const double w = cut / u;
    return (base(w) + base(-w)) * cut / (u * u);
  };
  const auto tail = integrate::adaptive(mapped, 0.0, 1.0, opt);
  return head.value + C(tail.value, 0.0);
}

}  // namespace qbm
