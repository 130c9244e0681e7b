#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace qbm {

/// Replaceable pieces, so a harness can check that the suite notices faults.
struct SelftestHooks {
  std::function<std::complex<double>(std::complex<double>, std::complex<double>)> lerch_phi;
};

/// Hooks whose Lerch-Phi is off by one part in 10^6.
SelftestHooks faulty_lerch_hooks();

struct GroupResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  double max_error = 0.0;  ///< worst error relative to the group's tolerance scale
  std::string first_failure;
};

struct SelftestReport {
  std::vector<GroupResult> groups;

  bool passed() const;
  /// One line per group, then the first failing case if any. Contains no
  /// timing, so identical runs give identical text.
  std::string text() const;
};

/// Special-function identities, the four-pole decomposition of the Ohmic
/// integrand at 100 random points, and the closed form against quadrature
/// on the 5 x 3 x 4 grid.
SelftestReport run_selftest(const SelftestHooks& hooks = {});

// Individual groups, also used by the acceptance checks.
GroupResult check_digamma_recurrence();
GroupResult check_harmonic_integers();
GroupResult check_lerch_shift(const SelftestHooks& hooks = {});
GroupResult check_harmonic_asymptotics();
GroupResult check_conjugation_symmetry();
GroupResult check_partial_fractions();
GroupResult check_oracle_grid();

/// Ohmic spectrum (with weight coth(omega / Omega_th)) from the expanded
/// denominator (omega^2 + wc^2 + gamma^2)^2 - 4 omega^2 wc^2.
double ohmic_spectrum_expanded(double gamma, double omega_c, double omega_th, double omega);
/// The same from the four simple poles at +-wc +- i gamma.
double ohmic_spectrum_four_pole(double gamma, double omega_c, double omega_th, double omega);

}  // namespace qbm
