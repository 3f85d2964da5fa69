// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/section.hpp"

#include <cmath>

#include "holobundle/error.hpp"
#include "holobundle/numeric.hpp"

namespace holobundle {

DiffScheme DiffScheme::finite_difference(double h, int order) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  if (order != 2 && order != 4) throw Error(ErrorCode::InvalidArgument, "difference order must be 2 or 4");
  DiffScheme s;
  s.h = h;
  s.order = order;
  return s;
}

DiffScheme DiffScheme::analytic() {
  DiffScheme s;
  s.mode = Mode::Analytic;
  return s;
}

Context::Context(FamilyPtr fam, double q_scale)
    : family(std::move(fam)), coords(Coordinates::cartesian(family ? family->k() : 1)), q(q_scale) {
  if (!family) throw Error(ErrorCode::InvalidArgument, "context needs a family");
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidArgument, "q must be positive");
}

bool Context::analytic() const noexcept {
  return scheme.mode == DiffScheme::Mode::Analytic && family->has_analytic_derivative();
}

Context Context::with_coords(Coordinates c) const {
  if (c.complex_dim() != family->k()) throw Error(ErrorCode::DimensionMismatch, "coordinates do not fit the family");
  Context out = *this;
  out.coords = c;
  return out;
}

Context Context::with_gauge(Gauge g) const {
  Context out = *this;
  out.gauge = std::move(g);
  return out;
}

Context Context::with_scheme(DiffScheme s) const {
  Context out = *this;
  out.scheme = s;
  return out;
}

Context Context::with_q(double q_scale) const {
  if (!(q_scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "q must be positive");
  Context out = *this;
  out.q = q_scale;
  return out;
}

Context Context::cartesian() const { return with_coords(Coordinates::cartesian(family->k())); }

ChartPoint Context::to_cartesian(const ChartPoint& xi) const { return cartesian_point(coords.to_z(xi)); }

ComplexVector section_vector(const Context& ctx, const ChartPoint& xi) {
  if (!ctx.coords.contains(xi)) throw Error(ErrorCode::DomainBoundary, "point outside coordinate patch");
  const ComplexVector z = ctx.coords.to_z(xi);
  const ComplexVector v = ctx.family->eval(z);
  const double n2 = v.squaredNorm();
  if (!(n2 > 1e-300)) throw Error(ErrorCode::ZeroNorm, ctx.family->name() + ": family vector vanishes");
  return (std::polar(1.0, ctx.gauge.gamma(z)) / std::sqrt(n2)) * v;
}

StateVector evaluate_section(const Context& ctx, const ChartPoint& xi) { return StateVector(section_vector(ctx, xi)); }

namespace {

std::vector<ComplexVector> analytic_partials(const Context& ctx, const ChartPoint& xi, const ComplexVector& psi) {
  const ComplexVector z = ctx.coords.to_z(xi);
  const ComplexVector v = ctx.family->eval(z);
  const double n2 = v.squaredNorm();
  const ComplexMatrix dz = ctx.coords.dz_dxi(xi);
  const RealMatrix m = ctx.coords.real_jacobian(xi);
  const RealVector dgamma = m.transpose() * ctx.gauge.cartesian_gradient(z);
  const cplx prefactor = std::polar(1.0, ctx.gauge.gamma(z)) / std::sqrt(n2);

  std::vector<ComplexVector> dv_dz;
  for (int a = 0; a < ctx.k(); ++a) dv_dz.push_back(ctx.family->derivative(z, a));

  std::vector<ComplexVector> out;
  for (int mu = 0; mu < ctx.real_dim(); ++mu) {
    ComplexVector dv = ComplexVector::Zero(v.size());
    for (int a = 0; a < ctx.k(); ++a) dv += dz(a, mu) * dv_dz[a];
    const double dn2 = 2.0 * v.dot(dv).real();
    out.push_back(prefactor * dv + psi * cplx(-0.5 * dn2 / n2, dgamma[mu]));
  }
  return out;
}

std::vector<ComplexVector> fd_partials(const Context& ctx, const ChartPoint& xi) {
  std::vector<ComplexVector> out;
  auto f = [&](const RealVector& p) { return section_vector(ctx, p); };
  for (int mu = 0; mu < ctx.real_dim(); ++mu) {
    const double h = numeric::scaled_step(ctx.scheme.h, xi[mu]);
    out.push_back(numeric::central_difference(f, xi, mu, h, ctx.scheme.order));
  }
  return out;
}

}  // namespace

SectionJet section_jet(const Context& ctx, const ChartPoint& xi) {
  SectionJet jet{evaluate_section(ctx, xi), {}};
  jet.partials = ctx.analytic() ? analytic_partials(ctx, xi, jet.psi.components()) : fd_partials(ctx, xi);
  return jet;
}

std::vector<StateVector> section_derivatives(const Context& ctx, const ChartPoint& xi) {
  const SectionJet jet = section_jet(ctx, xi);
  std::vector<StateVector> out;
  out.reserve(jet.partials.size());
  for (const auto& d : jet.partials) out.emplace_back(d);
  return out;
}

}  // namespace holobundle
