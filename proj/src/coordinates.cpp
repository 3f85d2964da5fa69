// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/coordinates.hpp"

#include <cmath>
#include <numbers>

#include "holobundle/error.hpp"

namespace holobundle {

namespace {
constexpr double kPolarMargin = 1e-12;

void require_size(const ChartPoint& xi, int n) {
  if (xi.size() != n) throw Error(ErrorCode::DimensionMismatch, "chart point has wrong number of coordinates");
}
}  // namespace

Coordinates Coordinates::cartesian(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "complex dimension must be positive");
  return Coordinates(Kind::Cartesian, k);
}

Coordinates Coordinates::bloch_polar() { return Coordinates(Kind::BlochPolar, 1); }

std::string_view Coordinates::name() const noexcept {
  return kind_ == Kind::Cartesian ? "cartesian" : "polar";
}

bool Coordinates::contains(const ChartPoint& xi) const {
  if (xi.size() != real_dim() || !xi.allFinite()) return false;
  if (kind_ == Kind::BlochPolar) {
    return xi[0] > kPolarMargin && xi[0] < std::numbers::pi - kPolarMargin;
  }
  return true;
}

ComplexVector Coordinates::to_z(const ChartPoint& xi) const {
  require_size(xi, real_dim());
  if (kind_ == Kind::Cartesian) return cartesian_z(xi);
  ComplexVector z(1);
  z[0] = std::tan(0.5 * xi[0]) * std::polar(1.0, xi[1]);
  return z;
}

ComplexMatrix Coordinates::dz_dxi(const ChartPoint& xi) const {
  require_size(xi, real_dim());
  ComplexMatrix d = ComplexMatrix::Zero(k_, 2 * k_);
  if (kind_ == Kind::Cartesian) {
    for (int a = 0; a < k_; ++a) {
      d(a, 2 * a) = 1.0;
      d(a, 2 * a + 1) = cplx(0.0, 1.0);
    }
    return d;
  }
  const double c = std::cos(0.5 * xi[0]);
  const cplx phase = std::polar(1.0, xi[1]);
  d(0, 0) = phase / (2.0 * c * c);
  d(0, 1) = cplx(0.0, 1.0) * std::tan(0.5 * xi[0]) * phase;
  return d;
}

RealMatrix Coordinates::real_jacobian(const ChartPoint& xi) const {
  const ComplexMatrix d = dz_dxi(xi);
  RealMatrix m(2 * k_, 2 * k_);
  for (int a = 0; a < k_; ++a) {
    m.row(2 * a) = d.row(a).real();
    m.row(2 * a + 1) = d.row(a).imag();
  }
  return m;
}

ChartPoint Coordinates::from_z(const ComplexVector& z, const ChartPoint* reference) const {
  if (z.size() != k_) throw Error(ErrorCode::DimensionMismatch, "z has wrong dimension");
  if (kind_ == Kind::Cartesian) return cartesian_point(z);
  ChartPoint xi(2);
  xi[0] = 2.0 * std::atan(std::abs(z[0]));
  double phi = std::arg(z[0]);
  if (reference != nullptr && reference->size() == 2) {
    const double two_pi = 2.0 * std::numbers::pi;
    phi += two_pi * std::round(((*reference)[1] - phi) / two_pi);
  }
  xi[1] = phi;
  return xi;
}

RealVector Coordinates::velocity_from_z(const ChartPoint& xi, const ComplexVector& zdot) const {
  const RealVector cart = cartesian_point(zdot);
  if (kind_ == Kind::Cartesian) return cart;
  return real_jacobian(xi).partialPivLu().solve(cart);
}

RealMatrix cartesian_complex_structure(int k) {
  RealMatrix j = RealMatrix::Zero(2 * k, 2 * k);
  for (int a = 0; a < k; ++a) {
    j(2 * a, 2 * a + 1) = -1.0;
    j(2 * a + 1, 2 * a) = 1.0;
  }
  return j;
}

RealMatrix Coordinates::complex_structure(const ChartPoint& xi) const {
  if (kind_ == Kind::Cartesian) return cartesian_complex_structure(k_);
  // J_xi = M^{-1} J_cart M with M = d(x, y)/dxi.
  const RealMatrix m = real_jacobian(xi);
  return m.partialPivLu().solve(cartesian_complex_structure(k_) * m);
}

}  // namespace holobundle
