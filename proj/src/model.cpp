#include "qbm/model.hpp"

#include <cmath>

#include "qbm/error.hpp"

namespace qbm {

namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }
bool finite_nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

ReducedParams::ReducedParams(double gamma, double omega_c, double omega_th, double mass,
                             double hbar)
    : gamma_(gamma), omega_c_(omega_c), omega_th_(omega_th), mass_(mass), hbar_(hbar) {
  if (!finite_positive(gamma)) throw InvariantError("gamma must be > 0");
  if (!finite_nonnegative(omega_c)) throw InvariantError("omega_c must be >= 0");
  if (!finite_nonnegative(omega_th)) throw InvariantError("omega_th must be >= 0");
  if (!finite_positive(mass)) throw InvariantError("mass must be > 0");
  if (!finite_positive(hbar)) throw InvariantError("hbar must be > 0");
}

ReducedParams ReducedParams::with_omega_c(double omega_c) const {
  return {gamma_, omega_c, omega_th_, mass_, hbar_};
}

ReducedParams ReducedParams::with_omega_th(double omega_th) const {
  return {gamma_, omega_c_, omega_th, mass_, hbar_};
}

ReducedParams derive_reduced(const PhysicalInputs& in) {
  if (!finite_positive(in.mass)) throw InvariantError("mass must be > 0");
  if (!finite_positive(in.light_speed)) throw InvariantError("light_speed must be > 0");
  if (!finite_positive(in.hbar)) throw InvariantError("hbar must be > 0");
  if (!finite_positive(in.k_boltzmann)) throw InvariantError("k_boltzmann must be > 0");
  if (!finite_nonnegative(in.temperature)) throw InvariantError("temperature must be >= 0");
  if (!finite_nonnegative(in.field)) throw InvariantError("field must be >= 0");
  if (!std::isfinite(in.charge)) throw InvariantError("charge must be finite");
  // The cyclotron sense does not change the MSD; store the rate.
  const double omega_c = std::abs(in.charge * in.field / (in.mass * in.light_speed));
  const double omega_th = 2.0 * in.k_boltzmann * in.temperature / in.hbar;
  return {in.gamma, omega_c, omega_th, in.mass, in.hbar};
}

KernelModel make_ohmic(double gamma) {
  if (!finite_positive(gamma)) throw InvariantError("kernel gamma must be > 0");
  return OhmicKernel{gamma};
}

KernelModel make_single_relaxation(double gamma, double tau) {
  if (!finite_positive(gamma)) throw InvariantError("kernel gamma must be > 0");
  if (!finite_positive(tau)) throw InvariantError("kernel tau must be > 0");
  return SingleRelaxationKernel{gamma, tau};
}

double kernel_gamma(const KernelModel& k) noexcept {
  return std::visit([](const auto& m) { return m.gamma; }, k);
}

std::string kernel_name(const KernelModel& k) {
  return std::holds_alternative<OhmicKernel>(k) ? "ohmic" : "srt";
}

std::complex<double> kernel_fourier(const KernelModel& k, double omega) {
  if (const auto* o = std::get_if<OhmicKernel>(&k)) return {o->gamma, 0.0};
  const auto& s = std::get<SingleRelaxationKernel>(k);
  const double wt = omega * s.tau;
  const double den = 1.0 + wt * wt;
  return {s.gamma / den, s.gamma * wt / den};
}

}  // namespace qbm
