#pragma once

#include <complex>
#include <string>
#include <variant>

namespace qbm {

/// The complete physical state consumed by every MSD route:
/// friction gamma, cyclotron frequency omega_c, thermal frequency
/// Omega_th = 2 k_B T / hbar, mass and hbar. omega_th == 0 is the strict
/// zero-temperature limit.
class ReducedParams {
 public:
  /// Throws InvariantError unless gamma > 0, omega_c >= 0, omega_th >= 0,
  /// mass > 0 and hbar > 0 (all finite).
  ReducedParams(double gamma, double omega_c, double omega_th, double mass = 1.0,
                double hbar = 1.0);

  double gamma() const noexcept { return gamma_; }
  double omega_c() const noexcept { return omega_c_; }
  double omega_th() const noexcept { return omega_th_; }
  double mass() const noexcept { return mass_; }
  double hbar() const noexcept { return hbar_; }

  ReducedParams with_omega_c(double omega_c) const;
  ReducedParams with_omega_th(double omega_th) const;

  /// k_B T / m = hbar Omega_th / (2 m), the classical velocity variance per axis.
  double thermal_velocity_variance() const noexcept { return hbar_ * omega_th_ / (2.0 * mass_); }

  friend bool operator==(const ReducedParams&, const ReducedParams&) = default;

 private:
  double gamma_;
  double omega_c_;
  double omega_th_;
  double mass_;
  double hbar_;
};

/// Dimensional inputs in Gaussian units.
struct PhysicalInputs {
  double charge = 0.0;
  double field = 0.0;
  double mass = 1.0;
  double light_speed = 1.0;
  double temperature = 0.0;
  double gamma = 1.0;
  double hbar = 1.0;
  double k_boltzmann = 1.0;
};

/// omega_c = qB/(mc), Omega_th = 2 k_B T / hbar. Throws InvariantError on
/// invalid inputs.
ReducedParams derive_reduced(const PhysicalInputs& in);

/// Memory-free friction, K(t) = 2 gamma delta(t).
struct OhmicKernel {
  double gamma;
};

/// Exponential memory, K(t) = (gamma / tau) exp(-t / tau) theta(t).
struct SingleRelaxationKernel {
  double gamma;
  double tau;
};

using KernelModel = std::variant<OhmicKernel, SingleRelaxationKernel>;

/// Throws InvariantError unless gamma > 0 (and tau > 0).
KernelModel make_ohmic(double gamma);
KernelModel make_single_relaxation(double gamma, double tau);

double kernel_gamma(const KernelModel& k) noexcept;
std::string kernel_name(const KernelModel& k);

/// K(omega) = int dt K(t) e^{i omega t}.
std::complex<double> kernel_fourier(const KernelModel& k, double omega);

}  // namespace qbm
