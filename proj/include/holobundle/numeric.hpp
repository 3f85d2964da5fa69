// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "holobundle/state.hpp"

namespace holobundle::numeric {

// Step along coordinate mu, scaled by the coordinate's magnitude.
inline double scaled_step(double h, double x) { return h * (1.0 + std::abs(x)); }

/// Central difference of f along coordinate mu at xi. Order 2 or 4.
/// Works for any value type with vector-space arithmetic (double, complex,
/// Eigen vectors and matrices).
template <class F>
auto central_difference(F&& f, const RealVector& xi, Eigen::Index mu, double h, int order) {
  using T = std::decay_t<std::invoke_result_t<F&, const RealVector&>>;
  auto at = [&](double s) {
    RealVector p = xi;
    p[mu] += s;
    return T(f(p));
  };
  if (order == 2) {
    T d = (at(h) - at(-h)) / (2.0 * h);
    return d;
  }
  const T p1 = at(h);
  const T m1 = at(-h);
  const T p2 = at(2.0 * h);
  const T m2 = at(-2.0 * h);
  T d = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
  return d;
}

/// One Richardson extrapolation on top of central_difference: combines steps
/// h and h/2 to cancel the leading truncation term.
template <class F>
auto richardson_difference(F&& f, const RealVector& xi, Eigen::Index mu, double h, int order) {
  using T = std::decay_t<std::invoke_result_t<F&, const RealVector&>>;
  const T coarse = central_difference(f, xi, mu, h, order);
  const T fine = central_difference(f, xi, mu, 0.5 * h, order);
  const double factor = order == 2 ? 4.0 : 16.0;
  T r = (factor * fine - coarse) / (factor - 1.0);
  return r;
}

// d^2 f / dxi^mu dxi^nu by nesting central_difference (4th order in each factor).
template <class F>
double second_partial(F&& f, const RealVector& xi, Eigen::Index mu, Eigen::Index nu, double h) {
  auto inner = [&](const RealVector& p) {
    return central_difference(f, p, nu, scaled_step(h, xi[nu]), 4);
  };
  return central_difference(inner, xi, mu, scaled_step(h, xi[mu]), 4);
}

// Composite Simpson over uniformly spaced samples; needs an odd sample count.
double simpson(std::span<const double> f, double spacing);

// Running integral at every grid node of uniformly spaced samples. Even
// nodes use composite Simpson; odd nodes close with the three-point rule
// on the last interval.
std::vector<double> cumulative_simpson(std::span<const double> f, double spacing);

// Nearest branch of `angle` to `reference` (mod 2 pi).
double nearest_branch(double angle, double reference);

// Scalar difference wrapped into (-pi, pi].
double wrap_angle(double angle);

}  // namespace holobundle::numeric
