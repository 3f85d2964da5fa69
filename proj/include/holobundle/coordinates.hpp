// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include "holobundle/state.hpp"

namespace holobundle {

/// Real coordinates xi^mu on a chart of complex dimension k, together with
/// the map to the holomorphic coordinates z^a used by a family.
///
/// Cartesian: xi = (x^1, y^1, ..., x^k, y^k).
/// BlochPolar: xi = (theta, phi) with z = tan(theta/2) e^{i phi}, k = 1,
/// defined on 0 < theta < pi.
class Coordinates {
 public:
  enum class Kind { Cartesian, BlochPolar };

  static Coordinates cartesian(int k);
  static Coordinates bloch_polar();

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] int complex_dim() const noexcept { return k_; }
  [[nodiscard]] int real_dim() const noexcept { return 2 * k_; }
  [[nodiscard]] std::string_view name() const noexcept;

  [[nodiscard]] bool contains(const ChartPoint& xi) const;

  [[nodiscard]] ComplexVector to_z(const ChartPoint& xi) const;
  // dz^a / dxi^mu, k x 2k.
  [[nodiscard]] ComplexMatrix dz_dxi(const ChartPoint& xi) const;
  // d(x^1, y^1, ...)/dxi^mu, 2k x 2k.
  [[nodiscard]] RealMatrix real_jacobian(const ChartPoint& xi) const;
  // Inverse map. `reference` selects the branch of periodic coordinates.
  [[nodiscard]] ChartPoint from_z(const ComplexVector& z, const ChartPoint* reference = nullptr) const;
  // Coordinate velocity for a given holomorphic velocity dz/dt.
  [[nodiscard]] RealVector velocity_from_z(const ChartPoint& xi, const ComplexVector& zdot) const;

  // J^mu_nu: multiplication by i on holomorphic tangent vectors.
  [[nodiscard]] RealMatrix complex_structure(const ChartPoint& xi) const;

 private:
  Coordinates(Kind kind, int k) : kind_(kind), k_(k) {}

  Kind kind_;
  int k_;
};

// Cartesian complex structure, blocks [[0, -1], [1, 0]].
RealMatrix cartesian_complex_structure(int k);

}  // namespace holobundle
