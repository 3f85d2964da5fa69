// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/gauge.hpp"

#include "holobundle/error.hpp"

namespace holobundle {

Gauge Gauge::holomorphic_real(Holomorphic f, HolomorphicGradient grad_f) {
  if (!f) throw Error(ErrorCode::InvalidArgument, "holomorphic gauge needs f");
  Gauge g;
  g.kind_ = Kind::HolomorphicReal;
  g.f_ = std::move(f);
  g.grad_f_ = std::move(grad_f);
  return g;
}

Gauge Gauge::callback(Phase gamma) {
  if (!gamma) throw Error(ErrorCode::InvalidArgument, "callback gauge needs a phase function");
  Gauge g;
  g.kind_ = Kind::Callback;
  g.phase_ = std::move(gamma);
  return g;
}

Gauge Gauge::holomorphic_linear(const ComplexVector& coefficients) {
  return holomorphic_real([coefficients](const ComplexVector& z) { return cplx(coefficients.transpose() * z); },
                          [coefficients](const ComplexVector&) { return coefficients; });
}

double Gauge::gamma(const ComplexVector& z) const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::HolomorphicReal: return f_(z).real();
    case Kind::Callback: return phase_(z);
  }
  return 0.0;
}

RealVector Gauge::cartesian_gradient(const ComplexVector& z, double h) const {
  const Eigen::Index k = z.size();
  RealVector grad = RealVector::Zero(2 * k);
  if (kind_ == Kind::Zero) return grad;
  if (kind_ == Kind::HolomorphicReal && grad_f_) {
    const ComplexVector df = grad_f_(z);
    for (Eigen::Index a = 0; a < k; ++a) {
      grad[2 * a] = df[a].real();       // d/dx Re f = Re f'
      grad[2 * a + 1] = -df[a].imag();  // d/dy Re f = Re(i f')
    }
    return grad;
  }
  for (Eigen::Index mu = 0; mu < 2 * k; ++mu) {
    const cplx dir = (mu % 2 == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
    auto at = [&](double s) {
      ComplexVector p = z;
      p[mu / 2] += s * dir;
      return gamma(p);
    };
    grad[mu] = (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h);
  }
  return grad;
}

}  // namespace holobundle
