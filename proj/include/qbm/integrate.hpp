#pragma once

// Globally adaptive Gauss-Kronrod (G10/K21) integration over finite
// intervals. Works for real and std::complex<double> integrands.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

namespace qbm::integrate {

namespace detail {

// Abscissae of the 21-point Kronrod rule (positive half, descending) and
// the weights of the embedded 10-point Gauss rule (odd Kronrod nodes).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208665466948, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

}  // namespace detail

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
};

/// One application of the 21-point Kronrod rule on [a, b], with the
/// QUADPACK-style error estimate from the embedded Gauss rule.
template <class F, class T = std::invoke_result_t<const F&, double>>
Estimate<T> gauss_kronrod21(const F& f, double a, double b) {
  using detail::kWg;
  using detail::kWgk;
  using detail::kXgk;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<T, 21> fv{};
  const T fc = f(center);
  T kronrod = fc * kWgk[10];
  T gauss{};
  double abs_sum = std::abs(fc) * kWgk[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    kronrod += (f1 + f2) * kWgk[j];
    abs_sum += (std::abs(f1) + std::abs(f2)) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  const T mean = kronrod * 0.5;
  double asc = std::abs(fc - mean) * kWgk[10];
  for (int j = 0; j < 10; ++j) {
    asc += (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean)) * kWgk[j];
  }

  const double h = std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  const double resabs = abs_sum * h;
  const double resasc = asc * h;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {kronrod * half, err};
}

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  /// Bisections allowed beyond the initial partition.
  std::size_t max_subdivisions = 5000;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  std::size_t subdivisions = 0;
  bool converged = false;
};

/// Integrates f over [points.front(), points.back()] starting from the
/// partition given by `points` (ascending), bisecting the interval with the
/// largest error estimate until the total error meets
/// max(abs_tol, rel_tol * |value|) or the budget is spent.
template <class F, class T = std::invoke_result_t<const F&, double>>
Result<T> adaptive(const F& f, std::span<const double> points, const Options& opt) {
  struct Piece {
    double a, b;
    T value;
    double error;
  };
  auto by_error = [](const Piece& x, const Piece& y) { return x.error < y.error; };

  std::vector<Piece> heap;
  heap.reserve(points.size() + 64);
  T total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    const auto e = gauss_kronrod21(f, points[i], points[i + 1]);
    heap.push_back({points[i], points[i + 1], e.value, e.error});
    total += e.value;
    total_err += e.error;
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  // Pieces that cannot be bisected further in double precision.
  T frozen{};
  double frozen_err = 0.0;

  Result<T> out;
  auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  while (total_err > target() && !heap.empty()) {
    if (out.subdivisions >= opt.max_subdivisions) break;
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Piece worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      frozen += worst.value;
      frozen_err += worst.error;
      continue;
    }
    const auto left = gauss_kronrod21(f, worst.a, mid);
    const auto right = gauss_kronrod21(f, mid, worst.b);
    ++out.subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push_back({worst.a, mid, left.value, left.error});
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back({mid, worst.b, right.value, right.error});
    std::push_heap(heap.begin(), heap.end(), by_error);
  }

  // Re-sum to shed the drift of the incremental updates.
  T sum = frozen;
  double err = frozen_err;
  for (const auto& p : heap) {
    sum += p.value;
    err += p.error;
  }
  out.value = sum;
  out.error = err;
  out.converged = err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(sum));
  return out;
}

template <class F, class T = std::invoke_result_t<const F&, double>>
Result<T> adaptive(const F& f, double a, double b, const Options& opt) {
  const std::array<double, 2> pts{a, b};
  return adaptive(f, std::span<const double>(pts), opt);
}

}  // namespace qbm::integrate
