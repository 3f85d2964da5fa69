// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "holobundle/amplitude.hpp"

namespace holobundle {

// sqrt(q) arccos |<a|b>|. Throws NotNormalized.
double fs_distance(const StateVector& a, const StateVector& b, double q);

struct DistanceResiduals {
  double distance = 0.0;  // |sqrt(p) - cos(s / sqrt(q))|
  double gradient = 0.0;  // |q |d log sqrt p|^2 - (1/p - 1)|
  double variance = 0.0;  // ||dp|^2 - (4/q) p (1 - p)|
};
// Ray-space families only (NotRaySpaceFamily otherwise).
DistanceResiduals probability_distance_check(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi);

// 1 / (1 + q g^{mu nu} V_mu V_nu).
double wkb_probability(const RealVector& V, const RealMatrix& g_inv, double q);

// Quantum-metric norm of the finite-difference gradient of s(xi) = fs_distance(psi_f, section(xi)).
double distance_gradient_norm(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi);

// Great circle from a (t = 0) to the ray of b (t = 1), b phase-aligned to a.
StateVector hilbert_geodesic(const StateVector& a, const StateVector& b, double t);

/// One point of a phase-flow trajectory.
struct FlowState {
  ChartPoint xi;
  RealVector v;         // unit-speed direction dxi/ds
  double speed = 0.0;   // |V|_g at xi
  double e_const = 0.0; // (1 - q |V|^2) / (2 |V|), fixed by the starting point
  double s = 0.0;       // arclength
  double p = 0.0;
};

// Starts along the integral curve of V (raised with the metric).
FlowState phase_flow_start(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi);

// One RK4 step of  xi'' + Gamma(xi', xi') = e F^mu_nu xi'^nu  with F = (2/q) Omega,
// followed by renormalization g(v, v) = 1. Throws SingularPoint where |V| or p vanish.
FlowState phase_flow_step(const StateVector& psi_f, const Context& ctx, const FlowState& state, double ds);

// Integrates over the given arclength, keeping every `stride`-th state (and the last).
std::vector<FlowState> phase_flow(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi,
                                  double arclength, double ds = 1e-3, int stride = 1);

struct RaySample {
  StateVector vector;
  std::uint64_t seed = 0;
};

// Normalized complex Gaussian vector: uniform in the Fubini-Study measure.
StateVector ray_uniform_sample(int n, std::mt19937_64& rng);
RaySample ray_uniform_sample(int n, std::uint64_t seed);

struct SampleStats {
  int n = 0;
  long samples = 0;
  double mean_p = 0.0;
  double stderr_p = 0.0;
  std::uint64_t seed = 0;
};

// Monte Carlo mean of |<psi_f|psi>|^2 over uniformly sampled rays. Samples
// are drawn in fixed-size chunks with per-chunk seeds, so the result is the
// same for every thread count.
SampleStats mean_transition_probability(const StateVector& psi_f, long samples, std::uint64_t seed,
                                        int threads = 1);

// |Lap p + (4(k+1)/q)(p - 1/(k+1))|, ray-space families only.
double laplacian_eigen_residual(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi);

}  // namespace holobundle
