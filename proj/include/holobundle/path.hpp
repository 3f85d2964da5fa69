// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "holobundle/section.hpp"

namespace holobundle {

/// A piecewise smooth curve in chart coordinates. Each piece is a map
/// t in [0, 1] -> xi; the global parameter s runs over [0, pieces()].
class PathSpec {
 public:
  using Curve = std::function<ChartPoint(double)>;
  using Tangent = std::function<RealVector(double)>;

  PathSpec() = default;

  // Straight segments between consecutive points. A single point gives an
  // empty (zero-length) path.
  static PathSpec polyline(std::vector<ChartPoint> points);
  // Tangent falls back to central differences when not supplied.
  static PathSpec parametric(Curve curve, Tangent tangent = {});
  // xi(t) = center + radius (cos a, sin a) in the (mu, nu) plane, a from `from` to `to`.
  static PathSpec arc(ChartPoint center, double radius, double from, double to, int mu = 0, int nu = 1);
  static PathSpec circle(ChartPoint center, double radius, int mu = 0, int nu = 1);

  PathSpec& then(const PathSpec& next);

  [[nodiscard]] int pieces() const noexcept { return static_cast<int>(pieces_.size()); }
  [[nodiscard]] bool empty() const noexcept { return pieces_.empty(); }
  [[nodiscard]] ChartPoint point(int piece, double t) const;
  [[nodiscard]] RealVector tangent(int piece, double t) const;
  // Global parameter s in [0, pieces()].
  [[nodiscard]] ChartPoint at(double s) const;
  [[nodiscard]] ChartPoint start() const;
  [[nodiscard]] ChartPoint end() const;

  // Initial Simpson intervals per piece before refinement.
  int n_steps = 16;

 private:
  struct Piece {
    Curve curve;
    Tangent tangent;
  };
  std::vector<Piece> pieces_;
  ChartPoint anchor_;  // lone point of an empty path
};

struct LineIntegral {
  double value = 0.0;
  int intervals = 0;  // total Simpson intervals over all pieces at convergence
};

// integrand(s, xi, dxi/dt) evaluated along the path; composite Simpson per
// piece, doubling the interval count until successive estimates differ by at
// most tol (1 + |I|). Throws NonConvergent after max_doublings.
using PathIntegrand = std::function<double(double, const ChartPoint&, const RealVector&)>;
LineIntegral line_integral(const PathSpec& path, const PathIntegrand& integrand, double tol = 1e-10,
                           int max_doublings = 12);

// Continuity-unwrapped change of an angle-valued function along the path.
// Steps jumping by more than pi/2 are bisected.
double unwrapped_change(const PathSpec& path, const std::function<double(double, const ChartPoint&)>& angle,
                        int steps_per_piece = 64);

// Same holomorphic point at both ends (compared through the chart map).
bool is_closed(const Context& ctx, const PathSpec& path, double tol = 1e-9);

}  // namespace holobundle
