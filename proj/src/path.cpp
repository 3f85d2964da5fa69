// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/path.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holobundle/error.hpp"
#include "holobundle/numeric.hpp"

namespace holobundle {

namespace {
constexpr double kTangentStep = 1e-5;
constexpr int kMaxBisections = 40;
}  // namespace

PathSpec PathSpec::polyline(std::vector<ChartPoint> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "polyline needs at least one point");
  PathSpec path;
  path.anchor_ = points.front();
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i].size() != points[i + 1].size()) {
      throw Error(ErrorCode::DimensionMismatch, "polyline points differ in dimension");
    }
    const ChartPoint a = points[i];
    const RealVector d = points[i + 1] - points[i];
    path.pieces_.push_back({[a, d](double t) { return ChartPoint(a + t * d); }, [d](double) { return d; }});
  }
  return path;
}

PathSpec PathSpec::parametric(Curve curve, Tangent tangent) {
  if (!curve) throw Error(ErrorCode::InvalidArgument, "parametric path needs a curve");
  PathSpec path;
  path.anchor_ = curve(0.0);
  path.pieces_.push_back({std::move(curve), std::move(tangent)});
  return path;
}

PathSpec PathSpec::arc(ChartPoint center, double radius, double from, double to, int mu, int nu) {
  if (mu < 0 || nu < 0 || mu >= center.size() || nu >= center.size() || mu == nu) {
    throw Error(ErrorCode::InvalidArgument, "arc plane indices out of range");
  }
  const double span = to - from;
  auto curve = [=](double t) {
    ChartPoint p = center;
    const double a = from + t * span;
    p[mu] += radius * std::cos(a);
    p[nu] += radius * std::sin(a);
    return p;
  };
  auto tangent = [=](double t) {
    RealVector v = RealVector::Zero(center.size());
    const double a = from + t * span;
    v[mu] = -radius * span * std::sin(a);
    v[nu] = radius * span * std::cos(a);
    return v;
  };
  return parametric(curve, tangent);
}

PathSpec PathSpec::circle(ChartPoint center, double radius, int mu, int nu) {
  return arc(std::move(center), radius, 0.0, 2.0 * std::numbers::pi, mu, nu);
}

PathSpec& PathSpec::then(const PathSpec& next) {
  if (pieces_.empty() && anchor_.size() == 0) anchor_ = next.anchor_;
  pieces_.insert(pieces_.end(), next.pieces_.begin(), next.pieces_.end());
  return *this;
}

ChartPoint PathSpec::point(int piece, double t) const { return pieces_.at(static_cast<std::size_t>(piece)).curve(t); }

RealVector PathSpec::tangent(int piece, double t) const {
  const Piece& p = pieces_.at(static_cast<std::size_t>(piece));
  if (p.tangent) return p.tangent(t);
  auto f = [&](const RealVector& s) { return RealVector(p.curve(s[0])); };
  RealVector s(1);
  s[0] = t;
  return numeric::central_difference(f, s, 0, kTangentStep, 4);
}

ChartPoint PathSpec::at(double s) const {
  if (pieces_.empty()) return anchor_;
  const int piece = std::clamp(static_cast<int>(std::floor(s)), 0, pieces() - 1);
  return point(piece, s - piece);
}

ChartPoint PathSpec::start() const { return pieces_.empty() ? anchor_ : point(0, 0.0); }

ChartPoint PathSpec::end() const { return pieces_.empty() ? anchor_ : point(pieces() - 1, 1.0); }

LineIntegral line_integral(const PathSpec& path, const PathIntegrand& integrand, double tol, int max_doublings) {
  LineIntegral out;
  for (int piece = 0; piece < path.pieces(); ++piece) {
    auto sample = [&](double t) {
      return integrand(piece + t, path.point(piece, t), path.tangent(piece, t));
    };
    int n = std::max(2, path.n_steps + path.n_steps % 2);
    std::vector<double> f(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) f[i] = sample(static_cast<double>(i) / n);
    double estimate = numeric::simpson(f, 1.0 / n);
    bool converged = false;
    for (int doubling = 0; doubling < max_doublings; ++doubling) {
      std::vector<double> finer(2 * static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i) finer[2 * i] = f[i];
      for (int i = 0; i < n; ++i) finer[2 * i + 1] = sample((i + 0.5) / n);
      n *= 2;
      f = std::move(finer);
      const double refined = numeric::simpson(f, 1.0 / n);
      const double change = std::abs(refined - estimate);
      estimate = refined;
      if (change <= tol * (1.0 + std::abs(refined))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw Error(ErrorCode::NonConvergent, "line integral did not converge on piece " + std::to_string(piece));
    }
    out.value += estimate;
    out.intervals += n;
  }
  return out;
}

double unwrapped_change(const PathSpec& path, const std::function<double(double, const ChartPoint&)>& angle,
                        int steps_per_piece) {
  if (path.empty()) return 0.0;
  // Walks from (t0, v0) to t1, splitting the step while the branch jump is large.
  std::function<double(int, double, double, double, int)> advance = [&](int piece, double t0, double v0, double t1,
                                                                      int depth) -> double {
    const double v1 = numeric::nearest_branch(angle(piece + t1, path.point(piece, t1)), v0);
    if (std::abs(v1 - v0) <= 0.5 * std::numbers::pi) return v1;
    if (depth >= kMaxBisections) {
      throw Error(ErrorCode::NonConvergent, "phase is discontinuous along the path");
    }
    const double tm = 0.5 * (t0 + t1);
    const double vm = advance(piece, t0, v0, tm, depth + 1);
    return advance(piece, tm, vm, t1, depth + 1);
  };
  const double first = angle(0.0, path.start());
  double value = first;
  for (int piece = 0; piece < path.pieces(); ++piece) {
    value = numeric::nearest_branch(angle(piece, path.point(piece, 0.0)), value);
    for (int i = 0; i < steps_per_piece; ++i) {
      value = advance(piece, static_cast<double>(i) / steps_per_piece, value,
                      static_cast<double>(i + 1) / steps_per_piece, 0);
    }
  }
  return value - first;
}

bool is_closed(const Context& ctx, const PathSpec& path, double tol) {
  const ComplexVector a = ctx.coords.to_z(path.start());
  const ComplexVector b = ctx.coords.to_z(path.end());
  return (a - b).norm() <= tol * (1.0 + a.norm());
}

}  // namespace holobundle
