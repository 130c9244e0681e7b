#pragma once

#include <complex>

#include "qbm/model.hpp"

namespace qbm {

/// Relative tolerance on the imaginary residue of the assembled MSD.
inline constexpr double kImagTol = 1e-9;
/// Relative distance of (gamma +- i omega_c) / (pi Omega_th) to a positive
/// integer below which a Matsubara pole is taken to coincide with a cyclotron pole.
inline constexpr double kCoincidenceTol = 1e-6;

struct ResidueBreakdown {
  std::complex<double> i1, i2, i3, i4;
  std::complex<double> assembled;  ///< i1 - i2 + i3 - i4
  double msd = 0.0;                ///< Re[(i hbar / pi m) assembled]
};

/// The four contour integrals of the Ohmic MSD, each -2 pi i times its
/// residue sum. Require t > 0 and omega_th > 0; throw DomainError otherwise
/// and PoleCoincidenceError when a Matsubara pole meets a cyclotron pole.
std::complex<double> residue_i1(const ReducedParams& params, double t);
std::complex<double> residue_i2(const ReducedParams& params, double t);
std::complex<double> residue_i3(const ReducedParams& params, double t);
std::complex<double> residue_i4(const ReducedParams& params, double t);

/// All four integrals and their assembly. Throws InvariantError when the
/// imaginary residue exceeds kImagTol * |msd|.
ResidueBreakdown residue_breakdown(const ReducedParams& params, double t);

/// Below this time the closed form loses accuracy to cancellation.
double exact_t_min(const ReducedParams& params);

/// True when (gamma +- i omega_c) / (pi Omega_th) sits within kCoincidenceTol
/// of a positive integer.
bool has_pole_coincidence(const ReducedParams& params);

enum class ExactFallback {
  none,
  small_t,           ///< t < exact_t_min, value from quadrature
  pole_coincidence,  ///< degenerate poles, value from quadrature
};

struct ExactMsd {
  double value = 0.0;
  ExactFallback fallback = ExactFallback::none;
};

/// Exact Ohmic MSD from the harmonic-number / Lerch-Phi closed form.
/// Falls back to full-quantum quadrature (and says so) for t < exact_t_min
/// and on pole coincidence. Throws DomainError for t <= 0 or omega_th == 0,
/// InvariantError when the imaginary residue is too large.
ExactMsd msd_exact_ohmic(const ReducedParams& params, double t);

}  // namespace qbm
