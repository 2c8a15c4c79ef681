#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "datxy/model.hpp"

namespace datxy {

/// Controls for the adaptive Gauss-Kronrod engine.
///
/// The estimated absolute error of the returned integral is driven below
/// max(abs_tol, rel_tol * |I|). An interval that needs to be split beyond
/// max_depth bisections aborts the integration with NonConvergence.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_depth = 50;
  std::size_t max_intervals = 200000;

  void validate() const {
    if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be > 0");
    if (rel_tol < 0.0) throw DomainError("rel_tol must be >= 0");
    if (max_depth < 1) throw DomainError("max_depth must be >= 1");
  }
};

template <std::size_t N>
struct QuadratureResult {
  std::array<double, N> value{};
  double error = 0.0;  // max over components of the summed error estimates
  std::size_t evaluations = 0;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077708875768390, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <std::size_t N>
struct Segment {
  double a = 0.0, b = 0.0;
  int depth = 0;
  std::array<double, N> value{};
  double error = 0.0;  // max over components
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <std::size_t N, class F>
Segment<N> gk21(F& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, N> kron{}, gauss{};
  const std::array<double, N> fc = f(center);
  for (std::size_t c = 0; c < N; ++c) kron[c] = fc[c] * kWgk[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const std::array<double, N> f1 = f(center - dx);
    const std::array<double, N> f2 = f(center + dx);
    for (std::size_t c = 0; c < N; ++c) {
      kron[c] += kWgk[j] * (f1[c] + f2[c]);
      if (j % 2 == 1) gauss[c] += kWg[j / 2] * (f1[c] + f2[c]);
    }
  }
  Segment<N> s;
  s.a = a;
  s.b = b;
  s.depth = depth;
  double err = 0.0;
  for (std::size_t c = 0; c < N; ++c) {
    s.value[c] = kron[c] * half;
    err = std::max(err, std::abs((kron[c] - gauss[c]) * half));
  }
  s.error = err;
  return s;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G10/K21) integration of a vector-valued
/// integrand. All components share the subdivision; the error that drives
/// refinement is the largest component error. `breakpoints` inside (a, b)
/// seed the initial partition (kinks, sign changes, known singular points).
template <std::size_t N, class F>
QuadratureResult<N> integrate_components(F&& f, double a, double b, const QuadratureSpec& spec,
                                         std::span<const double> breakpoints = {}) {
  spec.validate();
  if (!(a <= b)) throw DomainError("integration bounds must satisfy a <= b");
  QuadratureResult<N> out;
  if (a == b) return out;

  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Segment<N>> heap;
  std::array<double, N> total{};
  auto add = [&](const detail::Segment<N>& s, double sign) {
    for (std::size_t c = 0; c < N; ++c) total[c] += sign * s.value[c];
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto s = detail::gk21<N>(f, cuts[i], cuts[i + 1], 0);
    out.evaluations += 21;
    add(s, 1.0);
    heap.push(s);
  }

  // Sum of per-segment max-component errors; bounds every component's error.
  double err_sum = 0.0;
  {
    auto copy = heap;
    while (!copy.empty()) {
      err_sum += copy.top().error;
      copy.pop();
    }
  }

  auto tolerance = [&]() {
    double mag = 0.0;
    for (std::size_t c = 0; c < N; ++c) mag = std::max(mag, std::abs(total[c]));
    return std::max(spec.abs_tol, spec.rel_tol * mag);
  };

  while (err_sum > tolerance()) {
    detail::Segment<N> worst = heap.top();
    // Segments whose error sits at round-off level cannot be improved.
    double seg_mag = 0.0;
    for (std::size_t c = 0; c < N; ++c) seg_mag = std::max(seg_mag, std::abs(worst.value[c]));
    if (worst.error <= 1e-15 * std::max(1.0, seg_mag)) break;
    if (worst.depth >= spec.max_depth || heap.size() >= spec.max_intervals)
      throw NonConvergence("adaptive quadrature exhausted its subdivision budget on [" +
                           std::to_string(worst.a) + ", " + std::to_string(worst.b) +
                           "], error estimate " + std::to_string(err_sum));
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gk21<N>(f, worst.a, mid, worst.depth + 1);
    auto right = detail::gk21<N>(f, mid, worst.b, worst.depth + 1);
    out.evaluations += 42;
    add(worst, -1.0);
    add(left, 1.0);
    add(right, 1.0);
    err_sum += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Final re-summation from the leaves removes accumulated add/subtract drift.
  std::array<double, N> sum{};
  double err = 0.0;
  while (!heap.empty()) {
    const auto& s = heap.top();
    for (std::size_t c = 0; c < N; ++c) sum[c] += s.value[c];
    err += s.error;
    heap.pop();
  }
  out.value = sum;
  out.error = err;
  return out;
}

/// Scalar convenience wrapper.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec, std::span<const double> breakpoints = {});

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct FixedRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
FixedRule gauss_legendre(int n);

/// Composite rule: each interval between consecutive sorted `cuts` is split
/// into max(min_panels, ceil(panels_per_unit * length)) equal panels, each
/// carrying an `order`-point Gauss-Legendre rule.
FixedRule composite_gauss_legendre(std::span<const double> cuts, double panels_per_unit,
                                   int min_panels, int order = 16);

}  // namespace datxy
