#include "qbm/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qbm/error.hpp"
#include "qbm/integrate.hpp"

namespace qbm::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << z.real() << ", " << z.imag() << ')';
  return os.str();
}

// Throws when z is within the pole tolerance of a non-positive integer.
void check_nonpositive_integer(Complex z, const char* fn) {
  if (z.real() > 0.5) return;
  const double n = std::round(z.real());
  if (n <= 0.0 && std::abs(z - Complex(n, 0.0)) < kPoleTolerance) {
    throw PoleError(std::string(fn) + ": argument " + describe(z) +
                    " is at a pole (non-positive integer)");
  }
}

// Asymptotic series for |z| >= 15, Re z > 0.
Complex digamma_asymptotic(Complex z) {
  // B_{2k} / (2k) for k = 1..7
  constexpr std::array<double, 7> c = {1.0 / 12.0,    -1.0 / 120.0,       1.0 / 252.0,
                                       -1.0 / 240.0,  1.0 / 132.0,        -691.0 / 32760.0,
                                       1.0 / 12.0};
  const Complex w = 1.0 / (z * z);
  Complex series = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) series = (series + *it) * w;
  return std::log(z) - 0.5 / z - series;
}

Complex cot(Complex w) {
  // std::tan is stable for large |Im w|, where cot -> -+i.
  return 1.0 / std::tan(w);
}

// zeta(k) for k = 2..20, for the Taylor series of H_x about x = 0.
constexpr std::array<double, 19> kZeta = {
    1.6449340668482264, 1.2020569031595943, 1.0823232337111382, 1.0369277551433699,
    1.0173430619844491, 1.0083492773819228, 1.0040773561979443, 1.0020083928260822,
    1.0009945751278181, 1.0004941886041195, 1.0002460865533080, 1.0001227133475785,
    1.0000612481350587, 1.0000305882363070, 1.0000152822594087, 1.0000076371976379,
    1.0000038172932650, 1.0000019082127166, 1.0000009539620339};

}  // namespace

Complex digamma(Complex z) {
  check_nonpositive_integer(z, "digamma");
  if (z.real() < 0.5) {
    // Reflection: psi(z) = psi(1 - z) - pi cot(pi z)
    return digamma(1.0 - z) - kPi * cot(kPi * z);
  }
  Complex shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  return digamma_asymptotic(z) + shift;
}

Complex harmonic_number(Complex x) {
  check_nonpositive_integer(x + 1.0, "harmonic_number");
  if (std::abs(x) < 0.05) {
    // H_x = sum_{k>=2} (-1)^k zeta(k) x^{k-1}
    Complex sum = 0.0;
    for (std::size_t i = kZeta.size(); i-- > 0;) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      sum = sum * x + sign * kZeta[i];
    }
    return sum * x;
  }
  return euler_mascheroni() + digamma(x + 1.0);
}

namespace {

// Direct summation; adequate for |z| <= 0.5 and Re alpha > 0.5.
Complex lerch_series(Complex z, Complex alpha) {
  Complex sum = 1.0 / alpha;
  Complex zn = 1.0;
  for (int n = 1; n < 2000; ++n) {
    zn *= z;
    const Complex term = zn / (static_cast<double>(n) + alpha);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Integral representation for Re alpha > 0:
//   Phi(z, 1, alpha) = int_0^inf exp(-alpha u) / (1 - z exp(-u)) du
Complex lerch_integral(Complex z, Complex alpha) {
  const double re = alpha.real();
  const double gap = 1.0 - std::abs(z);
  const double upper = (40.0 + std::log(1.0 / gap)) / re;
  auto integrand = [&](double u) {
    return std::exp(-alpha * u) / (1.0 - z * std::exp(-u));
  };
  // Resolve the peak of width ~|1 - z| at u = 0 through the initial partition.
  std::vector<double> pts{0.0};
  for (double w = std::abs(1.0 - z); w < upper; w *= 8.0) pts.push_back(w);
  pts.push_back(upper);
  const integrate::Options opt{0.0, 1e-13, 2000};
  const auto r = integrate::adaptive(integrand, std::span<const double>(pts), opt);
  return r.value;
}

}  // namespace

Complex lerch_phi(Complex z, Complex alpha) {
  const double az = std::abs(z);
  if (!(az < 1.0)) {
    throw DomainError("lerch_phi: |z| = " + describe(z) + " must be < 1");
  }
  check_nonpositive_integer(alpha, "lerch_phi");
  if (z == Complex(0.0, 0.0)) return 1.0 / alpha;

  // Phi(z, 1, alpha) = 1/alpha + z Phi(z, 1, alpha + 1)
  Complex head = 0.0;
  Complex zpow = 1.0;
  auto shift_once = [&] {
    check_nonpositive_integer(alpha, "lerch_phi");
    head += zpow / alpha;
    zpow *= z;
    alpha += 1.0;
  };
  while (alpha.real() <= 0.5) shift_once();

  if (az <= 0.5) return head + zpow * lerch_series(z, alpha);

  // Move alpha far enough right that the integrand decays quickly and
  // oscillates only a few dozen times over its support.
  while (alpha.real() < 10.0 || alpha.real() < 0.25 * std::abs(alpha.imag())) shift_once();
  return head + zpow * lerch_integral(z, alpha);
}

Complex coth(Complex z) {
  const double n = std::round(z.imag() / kPi);
  if (std::abs(z - Complex(0.0, n * kPi)) < kPoleTolerance) {
    throw PoleError("coth: argument " + describe(z) + " is at a pole (i n pi)");
  }
  if (z.real() < 0.0) return -coth(-z);
  if (z.real() > 20.0) {
    // coth z = 1 + 2 e^{-2z} / (1 - e^{-2z})
    const Complex e = std::exp(-2.0 * z);
    return 1.0 + 2.0 * e / (1.0 - e);
  }
  return std::cosh(z) / std::sinh(z);
}

Complex one_minus_exp(Complex w) {
  // exp(x + iy) - 1 = expm1(x) cos y - 2 sin^2(y/2) + i e^x sin y
  const double x = w.real();
  const double y = w.imag();
  const double s = std::sin(0.5 * y);
  const Complex em1(std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y));
  return -em1;
}

}  // namespace qbm::specfun
