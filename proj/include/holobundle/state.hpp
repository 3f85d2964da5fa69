// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <initializer_list>

#include <Eigen/Dense>

namespace holobundle {

using cplx = std::complex<double>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Real chart coordinates xi^mu. For Cartesian charts the layout is
// interleaved (x^1, y^1, x^2, y^2, ...) with z^a = x^a + i y^a.
using ChartPoint = RealVector;

ChartPoint cartesian_point(const ComplexVector& z);
ComplexVector cartesian_z(const ChartPoint& xi);

inline constexpr double kNormalizationTolerance = 1e-12;

/// A finite vector in Hilbert space. Normalization is a property, not an
/// invariant: unnormalized family vectors and derivatives use the same type.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(ComplexVector components);
  StateVector(std::initializer_list<cplx> components);

  static StateVector basis(Eigen::Index dim, Eigen::Index index);

  [[nodiscard]] Eigen::Index dim() const noexcept { return c_.size(); }
  [[nodiscard]] const ComplexVector& components() const noexcept { return c_; }
  [[nodiscard]] cplx operator[](Eigen::Index i) const { return c_[i]; }

  [[nodiscard]] double norm() const { return c_.norm(); }
  [[nodiscard]] bool is_normalized(double tol = kNormalizationTolerance) const;
  // Throws ZeroNorm for vectors with squared norm below 1e-300.
  [[nodiscard]] StateVector normalized() const;

 private:
  ComplexVector c_;
};

// Dirac bracket <a|b>, conjugate-linear in the first argument.
cplx inner_product(const StateVector& a, const StateVector& b);
cplx inner_product(const ComplexVector& a, const ComplexVector& b);

}  // namespace holobundle
