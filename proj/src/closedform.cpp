#include "qbm/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qbm/error.hpp"
#include "qbm/quadrature.hpp"
#include "qbm/specfun.hpp"

namespace qbm {

namespace {

using C = std::complex<double>;
using specfun::coth;
using specfun::harmonic_number;
using specfun::lerch_phi;
using specfun::one_minus_exp;

constexpr double kPi = std::numbers::pi;
constexpr C kI{0.0, 1.0};

bool near_positive_integer(C a) {
  const double n = std::round(a.real());
  return n >= 1.0 && std::abs(a - n) <= kCoincidenceTol * n;
}

// Shared pieces of the residue sums.
struct Terms {
  double gamma, wc, omega_th, p, t, z, log_term;
  C am, ap;  // (gamma -+ i wc) / p

  Terms(const ReducedParams& params, double time)
      : gamma(params.gamma()), wc(params.omega_c()), omega_th(params.omega_th()), t(time) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("closed form requires t > 0");
    if (!(omega_th > 0.0)) throw DomainError("closed form requires omega_th > 0");
    if (has_pole_coincidence(params)) {
      std::ostringstream os;
      os.precision(17);
      os << "Matsubara pole coincides with cyclotron pole (gamma=" << gamma
         << ", omega_c=" << wc << ", omega_th=" << omega_th << ")";
      throw PoleCoincidenceError(os.str());
    }
    p = kPi * omega_th;
    z = std::exp(-p * t);
    log_term = std::log1p(-z);
    am = C(gamma, -wc) / p;
    ap = C(gamma, wc) / p;
  }

  C phi(C alpha) const { return z == 0.0 ? C(0.0) : z * lerch_phi(z, alpha); }
  // 1 - e^{-gamma t + i wc t} and 1 - e^{-gamma t - i wc t}
  C decay_plus() const { return one_minus_exp(C(-gamma * t, wc * t)); }
  C decay_minus() const { return one_minus_exp(C(-gamma * t, -wc * t)); }
  C coth_plus() const { return coth(C(wc, gamma) / omega_th); }
  C coth_minus() const { return coth(C(wc, -gamma) / omega_th); }
};

constexpr C kMinus2PiI{0.0, -2.0 * kPi};

}  // namespace

double exact_t_min(const ReducedParams& params) {
  const double top = std::max({params.gamma(), params.omega_c(), kPi * params.omega_th()});
  return 1e-3 / top;
}

bool has_pole_coincidence(const ReducedParams& params) {
  if (!(params.omega_th() > 0.0)) return false;
  const double p = kPi * params.omega_th();
  return near_positive_integer(C(params.gamma(), -params.omega_c()) / p) ||
         near_positive_integer(C(params.gamma(), params.omega_c()) / p);
}

C residue_i1(const ReducedParams& params, double t) {
  const Terms k(params, t);
  const C g = C(k.gamma, -k.wc);
  const C matsubara =
      (harmonic_number(-k.am) + k.phi(1.0 - k.am) + k.p * t + k.log_term) / (2.0 * kPi * g);
  const C w = C(k.wc, k.gamma);
  const C cyclotron = k.decay_plus() * k.coth_plus() / (2.0 * w);
  return kMinus2PiI * (matsubara + cyclotron);
}

C residue_i2(const ReducedParams& params, double t) {
  const Terms k(params, t);
  const C g = C(k.gamma, k.wc);
  return kMinus2PiI *
         (-(harmonic_number(k.ap) + k.phi(1.0 + k.ap) + k.log_term) / (2.0 * kPi * g));
}

C residue_i3(const ReducedParams& params, double t) {
  const Terms k(params, t);
  const C g = C(k.gamma, k.wc);
  const C matsubara =
      (harmonic_number(-k.ap) + k.phi(1.0 - k.ap) + k.p * t + k.log_term) / (2.0 * kPi * g);
  const C w = C(k.wc, -k.gamma);
  const C cyclotron = k.decay_minus() * k.coth_minus() / (2.0 * w);
  return kMinus2PiI * (matsubara + cyclotron);
}

C residue_i4(const ReducedParams& params, double t) {
  const Terms k(params, t);
  const C g = C(k.gamma, -k.wc);
  return kMinus2PiI *
         (-(harmonic_number(k.am) + k.phi(1.0 + k.am) + k.log_term) / (2.0 * kPi * g));
}

ResidueBreakdown residue_breakdown(const ReducedParams& params, double t) {
  ResidueBreakdown r;
  r.i1 = residue_i1(params, t);
  r.i2 = residue_i2(params, t);
  r.i3 = residue_i3(params, t);
  r.i4 = residue_i4(params, t);
  r.assembled = r.i1 - r.i2 + r.i3 - r.i4;
  const C v = kI * params.hbar() / (kPi * params.mass()) * r.assembled;
  if (std::abs(v.imag()) > kImagTol * std::abs(v.real())) {
    throw InvariantError("residue assembly is not real");
  }
  r.msd = v.real();
  return r;
}

namespace {

double closed_form(const ReducedParams& params, double t) {
  const Terms k(params, t);
  const double s2 = k.gamma * k.gamma + k.wc * k.wc;
  const C gp(k.gamma, k.wc);
  const C gm(k.gamma, -k.wc);
  C sum = gp * (harmonic_number(k.am) + harmonic_number(-k.am));
  sum += gm * (harmonic_number(-k.ap) + harmonic_number(k.ap));
  sum += gp * (k.phi(1.0 + k.am) + k.phi(1.0 - k.am));
  sum += gm * (k.phi(1.0 + k.ap) + k.phi(1.0 - k.ap));
  sum += 2.0 * k.gamma * (k.p * t + 2.0 * k.log_term);
  sum += kPi * C(k.wc, k.gamma) * k.decay_minus() * k.coth_minus();
  sum += kPi * C(k.wc, -k.gamma) * k.decay_plus() * k.coth_plus();
  const C v = params.hbar() / (kPi * params.mass() * s2) * sum;
  if (std::abs(v.imag()) > kImagTol * std::abs(v.real())) {
    std::ostringstream os;
    os.precision(6);
    os << "closed form has imaginary residue " << v.imag() << " against " << v.real();
    throw InvariantError(os.str());
  }
  return std::max(v.real(), 0.0);
}

}  // namespace

ExactMsd msd_exact_ohmic(const ReducedParams& params, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("msd_exact_ohmic requires t > 0");
  if (!(params.omega_th() > 0.0)) {
    throw DomainError("msd_exact_ohmic requires omega_th > 0; use quadrature or low_t");
  }
  const auto kernel = make_ohmic(params.gamma());
  if (t < exact_t_min(params)) {
    return {msd_quadrature(params, kernel, t, TemperatureMode::full_quantum),
            ExactFallback::small_t};
  }
  if (has_pole_coincidence(params)) {
    return {msd_quadrature(params, kernel, t, TemperatureMode::full_quantum),
            ExactFallback::pole_coincidence};
  }
  return {closed_form(params, t), ExactFallback::none};
}

}  // namespace qbm
