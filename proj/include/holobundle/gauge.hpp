// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "holobundle/state.hpp"

namespace holobundle {

/// Phase gamma(z, zbar) multiplying the normalized family vector.
///
/// Zero and HolomorphicReal (gamma = Re f(z)) are the restricted gauges in
/// which every bundle quantity follows from the Kahler potential. Callback
/// admits an arbitrary real phase without those guarantees.
class Gauge {
 public:
  enum class Kind { Zero, HolomorphicReal, Callback };

  using Holomorphic = std::function<cplx(const ComplexVector&)>;
  using HolomorphicGradient = std::function<ComplexVector(const ComplexVector&)>;
  using Phase = std::function<double(const ComplexVector&)>;

  Gauge() = default;

  static Gauge zero() { return {}; }
  static Gauge holomorphic_real(Holomorphic f, HolomorphicGradient grad_f = {});
  static Gauge callback(Phase gamma);
  // f(z) = sum_a c_a z^a.
  static Gauge holomorphic_linear(const ComplexVector& coefficients);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] bool restricted() const noexcept { return kind_ != Kind::Callback; }

  [[nodiscard]] double gamma(const ComplexVector& z) const;
  // d gamma / d(x^1, y^1, ...), analytic when grad f is known; otherwise
  // fourth-order central differences of step h.
  [[nodiscard]] RealVector cartesian_gradient(const ComplexVector& z, double h = 1e-5) const;

 private:
  Kind kind_ = Kind::Zero;
  Holomorphic f_;
  HolomorphicGradient grad_f_;
  Phase phase_;
};

}  // namespace holobundle
