// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/numeric.hpp"

#include <numbers>

#include "holobundle/error.hpp"

namespace holobundle::numeric {

double simpson(std::span<const double> f, double spacing) {
  const std::size_t n = f.size();
  if (n < 3 || n % 2 == 0) throw Error(ErrorCode::InvalidArgument, "Simpson needs an odd sample count >= 3");
  double sum = f.front() + f.back();
  for (std::size_t i = 1; i + 1 < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
  return sum * spacing / 3.0;
}

std::vector<double> cumulative_simpson(std::span<const double> f, double spacing) {
  std::vector<double> out(f.size(), 0.0);
  if (f.size() < 2) return out;
  if (f.size() == 2) {
    out[1] = 0.5 * spacing * (f[0] + f[1]);
    return out;
  }
  // first interval from the quadratic through nodes 0, 1, 2
  out[1] = spacing * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0;
  for (std::size_t i = 2; i < f.size(); ++i) {
    if (i % 2 == 0) {
      out[i] = out[i - 2] + spacing * (f[i - 2] + 4.0 * f[i - 1] + f[i]) / 3.0;
    } else {
      out[i] = out[i - 1] + spacing * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]) / 12.0;
    }
  }
  return out;
}

double nearest_branch(double angle, double reference) {
  const double two_pi = 2.0 * std::numbers::pi;
  return angle + two_pi * std::round((reference - angle) / two_pi);
}

double wrap_angle(double angle) {
  return nearest_branch(angle, 0.0);
}

}  // namespace holobundle::numeric
