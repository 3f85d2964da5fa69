// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "holobundle/section.hpp"

namespace holobundle {

inline constexpr double kDegenerateMetricTolerance = 1e-10;

/// Bundle data at one chart point, all in the context's real coordinates.
struct GeometricData {
  RealVector A;         // Berry-Simon connection A_mu = -i <psi|d_mu psi>
  ComplexMatrix H;      // q <D_mu psi|D_nu psi>
  RealMatrix g;         // Re H
  RealMatrix omega;     // Im H
  RealMatrix J;         // J^mu_nu
  RealMatrix g_inv;
  double q = 4.0;

  // Omega_mu^nu = Omega_{mu lambda} g^{lambda nu}, acting on covectors.
  [[nodiscard]] RealMatrix omega_mixed() const { return omega * g_inv; }
  // g^{mu nu} u_mu w_nu.
  [[nodiscard]] double dot(const RealVector& u, const RealVector& w) const { return u.dot(g_inv * w); }
  [[nodiscard]] double norm(const RealVector& u) const;
};

/// Levi-Civita symbols of the quantum metric; gamma[mu](nu, lambda) = Gamma^mu_{nu lambda}.
struct ChristoffelData {
  std::vector<RealMatrix> gamma;

  // Gamma^mu_{nu lambda} v^nu w^lambda.
  [[nodiscard]] RealVector contract(const RealVector& v, const RealVector& w) const;
};

RealVector berry_connection(const Context& ctx, const ChartPoint& xi);

// Throws DegenerateMetric when the smallest eigenvalue of g is <= 1e-10.
GeometricData geometric_data(const Context& ctx, const ChartPoint& xi);
// Same, reusing an already computed section jet at xi.
GeometricData geometric_data(const Context& ctx, const ChartPoint& xi, const SectionJet& jet);

// (q/2) log <psi~|psi~>.
double kahler_potential(const HolomorphicFamily& family, const ComplexVector& z, double q);

// g_{a bbar} = (q/2) d_a d_bbar log <psi~|psi~> by finite differences, k x k.
ComplexMatrix metric_from_potential(const Context& ctx, const ComplexVector& z);

ChristoffelData christoffel(const Context& ctx, const ChartPoint& xi);

// Complex components of Cartesian tensors in the basis (z^1..z^k, zbar^1..zbar^k).
// Lowering coefficients for covariant slots, raising for contravariant ones.
ComplexMatrix lower_coefficients(int k);
ComplexMatrix raise_coefficients(int k);
ComplexMatrix complex_components(const RealMatrix& covariant_cartesian);
// The g_{a bbar} block, k x k (row a, column b).
ComplexMatrix hermitian_block(const RealMatrix& g_cartesian);

// Pulls a covariant 2-tensor from the context's coordinates back to Cartesian ones.
RealMatrix covariant_to_cartesian(const Context& ctx, const ChartPoint& xi, const RealMatrix& t);

/// Residuals of the structural identities at one point (max-abs norms).
struct StructureReport {
  double mixed_type = 0.0;           // H outside its (abar, b) block
  double curvature = 0.0;            // Omega - (q/2) dA
  double complex_structure = 0.0;    // J^2 + I
  double hermitian = 0.0;            // J^T g J - g
  double kahler_form = 0.0;          // Omega - J^T g
  double parallel_j = 0.0;           // nabla J
  double closed_form = 0.0;          // d Omega
  double christoffel_mixed = 0.0;    // Gamma with mixed holomorphic type
  double christoffel_hermitian = 0.0;  // Gamma^a_{bc} - g^{dbar a} d_b g_{c dbar}
  double kahler_symmetry = 0.0;      // d_c g_{a bbar} - d_a g_{c bbar}
  double kahler_symmetry_conj = 0.0; // d_cbar g_{b abar} - d_abar g_{b cbar}
  double potential = 0.0;            // metric_from_potential - g_{a bbar}

  [[nodiscard]] std::vector<std::pair<std::string, double>> entries() const;
  [[nodiscard]] double max() const;
};

StructureReport verify_structure(const Context& ctx, const ChartPoint& xi);

namespace detail {
// Derivative along xi^mu of a matrix-valued field, outer step with Richardson.
RealMatrix outer_derivative(const Context& ctx, const std::function<RealMatrix(const ChartPoint&)>& f,
                            const ChartPoint& xi, int mu,
                            double max_step = std::numeric_limits<double>::infinity());
double outer_step(const Context& ctx, const ChartPoint& xi, int mu);
// sqrt(det g) g^{mu nu} W_nu for each column W of `covectors`.
RealMatrix contravariant_density(const GeometricData& d, const RealMatrix& covectors);
// Column-wise (1/sqrt(det g)) d_mu D^mu of a density field D returned by `density`.
// length_scale bounds the step for fields that vary fast near a zero.
RealVector divergence(const Context& ctx, const ChartPoint& xi, const GeometricData& at_xi,
                      const std::function<RealMatrix(const ChartPoint&)>& density,
                      double length_scale = std::numeric_limits<double>::infinity());
}  // namespace detail

}  // namespace holobundle
