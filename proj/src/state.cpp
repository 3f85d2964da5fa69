// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/state.hpp"

#include <cmath>
#include <string>

#include "holobundle/error.hpp"

namespace holobundle {

ChartPoint cartesian_point(const ComplexVector& z) {
  ChartPoint xi(2 * z.size());
  for (Eigen::Index a = 0; a < z.size(); ++a) {
    xi[2 * a] = z[a].real();
    xi[2 * a + 1] = z[a].imag();
  }
  return xi;
}

ComplexVector cartesian_z(const ChartPoint& xi) {
  if (xi.size() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch, "Cartesian chart point needs an even number of coordinates");
  }
  ComplexVector z(xi.size() / 2);
  for (Eigen::Index a = 0; a < z.size(); ++a) z[a] = cplx(xi[2 * a], xi[2 * a + 1]);
  return z;
}

StateVector::StateVector(ComplexVector components) : c_(std::move(components)) {}

StateVector::StateVector(std::initializer_list<cplx> components) : c_(components.size()) {
  Eigen::Index i = 0;
  for (const auto& v : components) c_[i++] = v;
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) {
    throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  }
  ComplexVector c = ComplexVector::Zero(dim);
  c[index] = 1.0;
  return StateVector(std::move(c));
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(c_.squaredNorm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  const double n2 = c_.squaredNorm();
  if (!(n2 > 1e-300)) throw Error(ErrorCode::ZeroNorm, "cannot normalize a zero vector");
  return StateVector(c_ / std::sqrt(n2));
}

cplx inner_product(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "inner product of dimensions " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  return a.dot(b);  // Eigen conjugates the first argument
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  return inner_product(a.components(), b.components());
}

}  // namespace holobundle
