#pragma once

#include <complex>
#include <cstddef>
#include <string>

#include "qbm/model.hpp"

namespace qbm {

/// Which thermal weight multiplies the fluctuation spectrum.
enum class TemperatureMode {
  full_quantum,  ///< coth(omega / Omega_th); sign(omega) when Omega_th == 0
  high_t,        ///< Omega_th / omega (classical limit, needs Omega_th > 0)
  low_t,         ///< sign(omega)
};

std::string to_string(TemperatureMode mode);
TemperatureMode parse_temperature_mode(const std::string& s);

struct QuadratureSettings {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  std::size_t max_subdivisions = 5000;

  /// Throws InvariantError unless rel_tol in (0, 1e-3], abs_tol >= 0 and
  /// max_subdivisions >= 100.
  void validate() const;
};

/// Fluctuation spectrum of the MSD without the (1 - cos omega t) factor,
/// folded onto omega > 0 and including the 4 hbar / (pi m) prefactor:
///   S(omega) = (4 hbar / pi m) w(omega) ReK [u^2 + wc^2 + ReK^2] / (omega D)
/// with u = omega - ImK and D = [(u - wc)^2 + ReK^2][(u + wc)^2 + ReK^2].
/// Requires omega > 0.
double msd_spectrum(const ReducedParams& params, const KernelModel& kernel, double omega,
                    TemperatureMode mode);

/// Integrand of the MSD on (0, inf): msd_spectrum * (1 - cos omega t), so
/// that msd_quadrature = int_0^inf msd_integrand d omega. At omega = 0 the
/// analytic limit is returned.
double msd_integrand(const ReducedParams& params, const KernelModel& kernel, double omega,
                     double t, TemperatureMode mode);

/// <Delta r^2>(t) in the x-y plane by direct quadrature. Exactly 0 at t = 0.
/// Throws DomainError for t < 0 or high_t with Omega_th == 0,
/// InvariantError if the kernel friction differs from params.gamma(), and
/// ConvergenceError when the subdivision budget runs out.
double msd_quadrature(const ReducedParams& params, const KernelModel& kernel, double t,
                      TemperatureMode mode, const QuadratureSettings& settings = {});

/// Slow reference: integrates the unfolded complex integrand
/// (2 hbar / pi m) ReK (|omega + iK|^2 + wc^2) w(omega) (1 - e^{-i omega t})
///   / (omega |(omega + iK)^2 - wc^2|^2)
/// as a symmetric principal value over the whole real line. The imaginary
/// part of the result should vanish.
std::complex<double> msd_quadrature_two_sided(const ReducedParams& params,
                                              const KernelModel& kernel, double t,
                                              TemperatureMode mode,
                                              const QuadratureSettings& settings = {});

}  // namespace qbm
