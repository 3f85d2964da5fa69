// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holobundle/geometry.hpp"
#include "holobundle/path.hpp"

namespace holobundle {

// Point queries refuse amplitudes with p at or below this.
inline constexpr double kPointProbabilityFloor = 1e-12;
// Path integrals stop with PathSingularity at or below this.
inline constexpr double kPathProbabilityFloor = 1e-6;

/// <psi_f|psi(xi)> = sqrt(p) e^{i eta} with the invariant phase gradient V = d eta - A.
struct AmplitudePolar {
  cplx amplitude;
  double sqrt_p = 0.0;
  double eta = 0.0;  // principal value
  RealVector V;
  RealVector grad_log_sqrt_p;
  RealVector A;

  [[nodiscard]] double p() const noexcept { return sqrt_p * sqrt_p; }
  // d eta = V + A
  [[nodiscard]] RealVector grad_eta() const { return V + A; }
  // Coordinate distance over which the amplitude changes by O(1), 1/|d log a|.
  [[nodiscard]] double length_scale() const {
    return 1.0 / std::sqrt(grad_log_sqrt_p.squaredNorm() + V.squaredNorm() + 1e-300);
  }
};

// Throws AmplitudeVanishes when p <= 1e-12.
AmplitudePolar polar_amplitude(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi);
AmplitudePolar polar_amplitude(const StateVector& psi_f, const SectionJet& jet, const RealVector& A);

/// Amplitude and bundle data from a single section jet.
struct PointData {
  GeometricData geometry;
  AmplitudePolar polar;
};
PointData point_data(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi);

struct CauchyRiemannResidual {
  double r1 = 0.0;  // |d log sqrt(p) - Omega.V|_g
  double r2 = 0.0;  // |V + Omega.d log sqrt(p)|_g
};
CauchyRiemannResidual cr_residual(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi);

struct NormCheck {
  double norm_gap = 0.0;  // | |d log sqrt(p)|_g - |V|_g |
  double ortho = 0.0;     // |<dp, V>_g|
};
NormCheck orthogonality_and_norm_check(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi);

/// Second-order identities, all evaluated with metric divergences.
struct ScalarReport {
  double div_V = 0.0;
  double lap_log = 0.0;          // Laplacian of log sqrt(p) + 2k/q
  double kahler_pot = 0.0;       // q d_a d_bbar log sqrt(p) + g_{a bbar}
  double continuity = 0.0;       // div(p V)
  double hj = 0.0;               // |V|^2/2 - Lap(sqrt p)/(2 sqrt p) - k/q
  double schrodinger = 0.0;      // |-(1/2) D.D a - (k/q) a| / |a|
  std::optional<double> mixed_hessian_eta;  // d_a d_bbar eta, restricted gauges only

  [[nodiscard]] std::vector<std::pair<std::string, double>> entries() const;
};
ScalarReport scalar_identities(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi);

struct TraceRow {
  double s = 0.0;
  ChartPoint xi;
  double sqrt_p = 0.0;
  double eta = 0.0;  // unwrapped along the trace
  double integrand = 0.0;
};

struct Reconstruction {
  double value = 0.0;   // reconstructed change (phase) or ratio (modulus)
  double direct = 0.0;  // same quantity computed from the amplitude directly
  int intervals = 0;
  std::vector<TraceRow> trace;
};

struct ReconstructionOptions {
  double tol = 1e-10;
  int trace_steps = 64;  // rows per path piece; 0 disables the trace
};

// eta(end) - eta(start) = integral of (A - Omega.d log sqrt p) . dxi.
Reconstruction reconstruct_phase(const StateVector& psi_f, const Context& ctx, const PathSpec& path,
                                 const ReconstructionOptions& options = {});
// sqrt(p(end)/p(start)) = exp integral of (Omega.V) . dxi.
Reconstruction reconstruct_modulus(const StateVector& psi_f, const Context& ctx, const PathSpec& path,
                                   const ReconstructionOptions& options = {});

// Continuity-unwrapped eta(end) - eta(start).
double direct_phase_change(const StateVector& psi_f, const Context& ctx, const PathSpec& path);

// Closed loops only (OpenPath otherwise): the integral of V . dxi.
double circulation(const StateVector& psi_f, const Context& ctx, const PathSpec& loop, double tol = 1e-10);

}  // namespace holobundle
