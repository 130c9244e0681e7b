#pragma once

#include <complex>

namespace qbm::specfun {

using Complex = std::complex<double>;

/// Distance in argument space below which a pole is reported as PoleError.
inline constexpr double kPoleTolerance = 1e-8;

/// Euler-Mascheroni constant gamma_0.
constexpr double euler_mascheroni() noexcept { return 0.57721566490153286061; }

/// Complex digamma psi(z). Throws PoleError near z = 0, -1, -2, ...
Complex digamma(Complex z);

/// Harmonic number analytically continued, H_x = gamma_0 + psi(x + 1).
/// Throws PoleError near negative integers.
Complex harmonic_number(Complex x);

/// Hurwitz-Lerch transcendent at s = 1:
///   Phi(z, 1, alpha) = sum_{n >= 0} z^n / (n + alpha),   |z| < 1.
/// Throws DomainError for |z| >= 1 and PoleError when alpha (or a shift of
/// it by a positive integer) reaches a non-positive integer.
Complex lerch_phi(Complex z, Complex alpha);

/// Complex hyperbolic cotangent; saturates to +-1 for large |Re z|.
/// Throws PoleError near z = i*n*pi.
Complex coth(Complex z);

/// 1 - exp(w) without cancellation for small |w|.
Complex one_minus_exp(Complex w);

}  // namespace qbm::specfun
