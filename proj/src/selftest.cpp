#include "qbm/selftest.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qbm/closedform.hpp"
#include "qbm/model.hpp"
#include "qbm/quadrature.hpp"
#include "qbm/specfun.hpp"

namespace qbm {

namespace {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

std::string fmt(C z) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << z.real() << ',' << z.imag() << ')';
  return os.str();
}

// Records one case; the first failure is kept.
void record(GroupResult& g, double err, double tol, const std::string& what) {
  ++g.cases;
  if (std::isnan(err)) err = INFINITY;
  g.max_error = std::max(g.max_error, err);
  if (!(err <= tol) && g.passed) {
    g.passed = false;
    g.first_failure = what + ": error " + fmt(err) + " > " + fmt(tol);
  }
}

GroupResult group(const char* name) {
  GroupResult g;
  g.name = name;
  return g;
}

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

C lerch_of(const SelftestHooks& h, C z, C a) {
  return h.lerch_phi ? h.lerch_phi(z, a) : specfun::lerch_phi(z, a);
}

}  // namespace

SelftestHooks faulty_lerch_hooks() {
  return {[](C z, C a) { return specfun::lerch_phi(z, a) * (1.0 + 1e-6); }};
}

double ohmic_spectrum_expanded(double g, double wc, double omega_th, double w) {
  const double n = w * w + wc * wc + g * g;
  const double d = n * n - 4.0 * w * w * wc * wc;
  return 4.0 / kPi * std::real(specfun::coth(C(w / omega_th, 0.0))) * g * n / (w * d);
}

double ohmic_spectrum_four_pole(double g, double wc, double omega_th, double w) {
  const C i(0.0, 1.0);
  const C sum = 1.0 / (w - wc - i * g) - 1.0 / (w - wc + i * g) + 1.0 / (w + wc - i * g) -
                1.0 / (w + wc + i * g);
  const double r = (sum / (4.0 * i)).real();
  return 4.0 / kPi * std::real(specfun::coth(C(w / omega_th, 0.0))) * r / w;
}

GroupResult check_digamma_recurrence() {
  GroupResult g = group("digamma recurrence");
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10000; ++k) {
    const double r = std::exp(uniform(rng, std::log(0.1), std::log(100.0)));
    const double th = uniform(rng, -0.5 * kPi, 0.5 * kPi);
    const C z = std::polar(r, th);
    if (!(z.real() > 0.0)) continue;
    const C lhs = specfun::digamma(z + 1.0) - specfun::digamma(z);
    const double err = std::abs(lhs - 1.0 / z) / std::abs(1.0 / z);
    record(g, err, 1e-12, "z=" + fmt(z));
  }
  return g;
}

GroupResult check_harmonic_integers() {
  GroupResult g = group("harmonic integer agreement");
  long double sum = 0.0L;
  for (int n = 1; n <= 1000; ++n) {
    sum += 1.0L / static_cast<long double>(n);
    const double h = specfun::harmonic_number(C(n, 0.0)).real();
    const double ref = static_cast<double>(sum);
    record(g, std::abs(h - ref) / ref, 1e-14, "n=" + std::to_string(n));
  }
  return g;
}

GroupResult check_lerch_shift(const SelftestHooks& hooks) {
  GroupResult g = group("lerch shift identity");
  std::mt19937_64 rng(13);
  for (int k = 0; k < 2000; ++k) {
    const C z = std::polar(0.95 * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, -kPi, kPi));
    const C a(uniform(rng, 0.2, 10.0), uniform(rng, -10.0, 10.0));
    const C res = lerch_of(hooks, z, a) - z * lerch_of(hooks, z, a + 1.0) - 1.0 / a;
    record(g, std::abs(res), 1e-11, "z=" + fmt(z) + " alpha=" + fmt(a));
  }
  // Closed-form values.
  const C half = lerch_of(hooks, 0.5, 1.0);
  record(g, std::abs(half - 2.0 * std::log(2.0)), 1e-13, "z=0.5 alpha=1");
  const C two = lerch_of(hooks, 0.5, 2.0);
  record(g, std::abs(two - 4.0 * (std::log(2.0) - 0.5)), 1e-13, "z=0.5 alpha=2");
  return g;
}

GroupResult check_harmonic_asymptotics() {
  GroupResult g = group("harmonic asymptotics");
  const double g0 = specfun::euler_mascheroni();
  for (int k = -8; k <= 8; ++k) {
    const double th = 0.49 * kPi * k / 8.0;
    const C big = std::polar(1e4, th);
    const double err_big = std::abs(specfun::harmonic_number(big) - (std::log(big) + g0));
    record(g, err_big / (0.5 / 1e4 + 1e-10), 1.0, "x=" + fmt(big));
  }
  for (int k = 0; k < 16; ++k) {
    const C small = std::polar(1e-4, 2.0 * kPi * k / 16.0);
    const double err = std::abs(specfun::harmonic_number(small) - (kPi * kPi / 6.0) * small);
    record(g, err / (2.0 * 1e-8), 1.0, "x=" + fmt(small));
  }
  return g;
}

GroupResult check_conjugation_symmetry() {
  GroupResult g = group("conjugation symmetry");
  std::mt19937_64 rng(17);
  auto check = [&](const char* name, C a, C fa, C fconj) {
    const double err = std::abs(fconj - std::conj(fa)) / std::max(std::abs(fa), 1e-300);
    record(g, err, 1e-13, std::string(name) + " at " + fmt(a));
  };
  for (int k = 0; k < 200; ++k) {
    const C z(uniform(rng, -20.0, 20.0), uniform(rng, 0.1, 20.0));
    check("digamma", z, specfun::digamma(z), specfun::digamma(std::conj(z)));
    check("harmonic_number", z, specfun::harmonic_number(z),
          specfun::harmonic_number(std::conj(z)));
    const C w(uniform(rng, -5.0, 5.0), uniform(rng, 0.1, 3.0));
    check("coth", w, specfun::coth(w), specfun::coth(std::conj(w)));
    const C zl = std::polar(0.95 * uniform(rng, 0.0, 1.0), uniform(rng, 0.05, 3.0));
    const C al(uniform(rng, 0.2, 10.0), uniform(rng, 0.1, 10.0));
    check("lerch_phi", zl, specfun::lerch_phi(zl, al),
          specfun::lerch_phi(std::conj(zl), std::conj(al)));
    check("one_minus_exp", w, specfun::one_minus_exp(w), specfun::one_minus_exp(std::conj(w)));
  }
  return g;
}

GroupResult check_partial_fractions() {
  GroupResult g = group("partial-fraction identity");
  std::mt19937_64 rng(19);
  for (int k = 0; k < 100; ++k) {
    const double gamma = std::exp(uniform(rng, std::log(0.2), std::log(5.0)));
    const double wc = uniform(rng, 0.0, 5.0);
    const double w = std::exp(uniform(rng, std::log(1e-2), std::log(50.0)));
    const double omega_th = std::exp(uniform(rng, std::log(0.05), std::log(100.0)));
    const double expanded = ohmic_spectrum_expanded(gamma, wc, omega_th, w);
    const double poles = ohmic_spectrum_four_pole(gamma, wc, omega_th, w);
    const ReducedParams p(gamma, wc, omega_th);
    const double library = msd_spectrum(p, make_ohmic(gamma), w, TemperatureMode::full_quantum);
    const double err = std::max(std::abs(poles - expanded), std::abs(library - expanded)) /
                       std::abs(expanded);
    std::ostringstream os;
    os.precision(17);
    os << "gamma=" << gamma << " omega_c=" << wc << " omega=" << w;
    record(g, err, 1e-12, os.str());
  }
  return g;
}

GroupResult check_oracle_grid() {
  GroupResult g = group("oracle equivalence grid");
  for (double wc : {0.0, 0.2, 1.0, 5.0, 20.0}) {
    for (double omega_th : {0.05, 1.0, 100.0}) {
      for (double t : {0.1, 1.0, 5.0, 20.0}) {
        const ReducedParams p(1.0, wc, omega_th);
        std::ostringstream os;
        os << "omega_c=" << wc << " omega_th=" << omega_th << " t=" << t;
        try {
          const double exact = msd_exact_ohmic(p, t).value;
          const double quad = msd_quadrature(p, make_ohmic(1.0), t, TemperatureMode::full_quantum);
          const double err = std::abs(exact - quad) / (1e-6 * quad + 1e-10);
          record(g, err, 1.0, os.str());
        } catch (const std::exception& e) {
          record(g, INFINITY, 1.0, os.str() + " (" + e.what() + ")");
        }
      }
    }
  }
  return g;
}

bool SelftestReport::passed() const {
  for (const auto& g : groups) {
    if (!g.passed) return false;
  }
  return true;
}

std::string SelftestReport::text() const {
  std::ostringstream os;
  const GroupResult* first = nullptr;
  for (const auto& g : groups) {
    os << (g.passed ? "PASS " : "FAIL ") << g.name << " (" << g.cases
       << " cases, max error " << fmt(g.max_error) << ")\n";
    if (!g.passed && !first) first = &g;
  }
  if (first) os << "first failure: [" << first->name << "] " << first->first_failure << '\n';
  os << (passed() ? "selftest passed\n" : "selftest FAILED\n");
  return os.str();
}

SelftestReport run_selftest(const SelftestHooks& hooks) {
  SelftestReport r;
  r.groups.push_back(check_digamma_recurrence());
  r.groups.push_back(check_harmonic_integers());
  r.groups.push_back(check_lerch_shift(hooks));
  r.groups.push_back(check_harmonic_asymptotics());
  r.groups.push_back(check_conjugation_symmetry());
  r.groups.push_back(check_partial_fractions());
  r.groups.push_back(check_oracle_grid());
  return r;
}

}  // namespace qbm
