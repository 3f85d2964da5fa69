// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include "holobundle/amplitude.hpp"

namespace holobundle {

/// Time-dependent Hermitian generator on [0, duration], hbar = 1.
struct HamiltonianSpec {
  std::function<ComplexMatrix(double)> matrix;
  double duration = 0.0;
  int dim = 0;

  static HamiltonianSpec constant(ComplexMatrix h, double duration);
  // (omega / 2) n.sigma for a unit axis n (normalized internally).
  static HamiltonianSpec precession(double omega, double duration, std::array<double, 3> axis = {0.0, 0.0, 1.0});
  // {"kind": "constant", "matrix": [[[re, im], ...], ...], "duration": T}
  // {"kind": "precession", "omega": w, "duration": T, "axis": [x, y, z]}
  static HamiltonianSpec from_json(std::string_view text);
};

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> energies;       // <psi|H(t)|psi>
  std::vector<ComplexVector> rates;   // d psi / dt = -i H psi
  // Filled by phase_decomposition.
  std::vector<ChartPoint> xi;
  std::vector<double> beta;           // unwrapped arg <psi_f|psi; t>
  std::vector<double> dynamical;      // -integral of E dt
  std::vector<double> geometric;      // -integral of xi_dot . Omega . d log sqrt p
  std::vector<double> connection;     // -integral of A . xi_dot

  // max_t |beta(t) - beta(0) - dynamical(t) - geometric(t)|
  [[nodiscard]] double decomposition_residual() const;
};

// Midpoint exponential integrator. Throws StepTooLarge when dt exceeds
// 0.01 / |H| at any sampled time.
EvolutionTrace evolve_schrodinger(const HamiltonianSpec& h, const StateVector& psi0, double dt);

// Projects each state to the chart and splits the accumulated phase of
// <psi_f|psi; t>. Requires a projective chart (ChartEscape off the chart).
// Throws StepTooLarge when beta jumps by more than pi/2 between grid times.
void phase_decomposition(EvolutionTrace& trace, const StateVector& psi_f, const Context& ctx);

// -(closed-loop integral of A). Throws OpenPath.
double cyclic_geometric_phase(const Context& ctx, const PathSpec& loop, double tol = 1e-10);

struct PancharatnamGeodesic {
  double connection_integral = 0.0;  // integral of A along the chart image of the geodesic
  double start_offset = 0.0;         // arg <section(z_f)|psi_f>
  double end_offset = 0.0;           // arg <section(z)|psi>
  // connection + end_offset - start_offset; equals arg <psi_f|psi> mod 2 pi.
  double total = 0.0;
};
// Both rays must lie in the family's projective chart.
PancharatnamGeodesic pancharatnam_geodesic(const StateVector& psi_f, const StateVector& psi, const Context& ctx,
                                           double tol = 1e-10);

struct PancharatnamPath {
  double offset = 0.0;      // eta at the start of the path
  double connection = 0.0;  // integral of A
  double correction = 0.0;  // (1/sqrt q) integral of Omega.ds tan(s/sqrt q)
  double total = 0.0;       // offset + connection + correction
  double direct = 0.0;      // offset + continuity-unwrapped change of eta
};
PancharatnamPath pancharatnam_path(const StateVector& psi_f, const Context& ctx, const PathSpec& path,
                                   double tol = 1e-10);

}  // namespace holobundle
