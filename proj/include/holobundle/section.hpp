// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "holobundle/coordinates.hpp"
#include "holobundle/family.hpp"
#include "holobundle/gauge.hpp"
#include "holobundle/state.hpp"

namespace holobundle {

struct DiffScheme {
  enum class Mode { FiniteDifference, Analytic };

  Mode mode = Mode::FiniteDifference;
  int order = 4;         // 2 or 4
  double h = 1e-4;       // first derivatives of sections, scaled by (1 + |xi^mu|)
  double outer_h = 1e-2; // derivatives of derived fields (curl, divergence, Christoffels)
  bool richardson = true;

  static DiffScheme finite_difference(double h = 1e-4, int order = 4);
  // Chain rule on the family's analytic derivative; falls back to finite
  // differences for families without one.
  static DiffScheme analytic();
};

/// Everything a point query needs besides the point: the family, the real
/// coordinates on its chart, the section's gauge, the metric scale q and
/// the differentiation scheme.
struct Context {
  FamilyPtr family;
  Coordinates coords;
  Gauge gauge;
  double q = 4.0;
  DiffScheme scheme;

  explicit Context(FamilyPtr fam, double q_scale = 4.0);

  [[nodiscard]] int k() const noexcept { return family->k(); }
  [[nodiscard]] int real_dim() const noexcept { return 2 * family->k(); }
  [[nodiscard]] bool analytic() const noexcept;

  [[nodiscard]] Context with_coords(Coordinates c) const;
  [[nodiscard]] Context with_gauge(Gauge g) const;
  [[nodiscard]] Context with_scheme(DiffScheme s) const;
  [[nodiscard]] Context with_q(double q_scale) const;
  [[nodiscard]] Context cartesian() const;
  // The same point expressed in Cartesian coordinates.
  [[nodiscard]] ChartPoint to_cartesian(const ChartPoint& xi) const;
};

/// Value and first partials d psi / d xi^mu of the normalized section.
struct SectionJet {
  StateVector psi;
  std::vector<ComplexVector> partials;
};

// |psi> = e^{i gamma} |psi~> / sqrt(<psi~|psi~>). Throws ZeroNorm or DomainBoundary.
StateVector evaluate_section(const Context& ctx, const ChartPoint& xi);

std::vector<StateVector> section_derivatives(const Context& ctx, const ChartPoint& xi);

SectionJet section_jet(const Context& ctx, const ChartPoint& xi);

// Cheapest consistent way to evaluate a section on a path (no derivatives).
ComplexVector section_vector(const Context& ctx, const ChartPoint& xi);

}  // namespace holobundle
