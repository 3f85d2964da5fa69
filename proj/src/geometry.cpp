// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "holobundle/error.hpp"
#include "holobundle/numeric.hpp"

namespace holobundle {

namespace {

constexpr double kRealPartTolerance = 1e-8;
constexpr double kPotentialStep = 1e-3;

RealVector connection_from_jet(const SectionJet& jet) {
  const ComplexVector& psi = jet.psi.components();
  RealVector a(static_cast<Eigen::Index>(jet.partials.size()));
  for (std::size_t mu = 0; mu < jet.partials.size(); ++mu) {
    const cplx c = psi.dot(jet.partials[mu]);
    // Re <psi|d psi> = d(|psi|^2)/2 must vanish for a normalized section.
    if (std::abs(c.real()) > kRealPartTolerance) {
      throw Error(ErrorCode::Internal, "section is not normalized: Re<psi|d psi> = " + std::to_string(c.real()));
    }
    a[static_cast<Eigen::Index>(mu)] = c.imag();
  }
  return a;
}

double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::vector<RealMatrix> metric_partials(const Context& ctx, const ChartPoint& xi) {
  std::vector<RealMatrix> dg;
  auto g = [&](const ChartPoint& p) { return geometric_data(ctx, p).g; };
  for (int mu = 0; mu < ctx.real_dim(); ++mu) dg.push_back(detail::outer_derivative(ctx, g, xi, mu));
  return dg;
}

ChristoffelData christoffel_from(const RealMatrix& g_inv, const std::vector<RealMatrix>& dg) {
  const auto n = g_inv.rows();
  ChristoffelData out;
  out.gamma.assign(static_cast<std::size_t>(n), RealMatrix::Zero(n, n));
  for (Eigen::Index nu = 0; nu < n; ++nu) {
    for (Eigen::Index la = 0; la < n; ++la) {
      // lowered symbol Gamma_{sigma nu lambda}
      RealVector lowered(n);
      for (Eigen::Index s = 0; s < n; ++s) {
        lowered[s] = 0.5 * (dg[nu](la, s) + dg[la](nu, s) - dg[s](nu, la));
      }
      const RealVector raised = g_inv * lowered;
      for (Eigen::Index mu = 0; mu < n; ++mu) out.gamma[mu](nu, la) = raised[mu];
    }
  }
  return out;
}

}  // namespace

double GeometricData::norm(const RealVector& u) const { return std::sqrt(std::max(0.0, dot(u, u))); }

RealVector ChristoffelData::contract(const RealVector& v, const RealVector& w) const {
  RealVector out(static_cast<Eigen::Index>(gamma.size()));
  for (std::size_t mu = 0; mu < gamma.size(); ++mu) out[static_cast<Eigen::Index>(mu)] = v.dot(gamma[mu] * w);
  return out;
}

namespace detail {

constexpr double kLocalStepFraction = 0.05;

double outer_step(const Context& ctx, const ChartPoint& xi, int mu) {
  return numeric::scaled_step(ctx.scheme.outer_h, xi[mu]);
}

RealMatrix outer_derivative(const Context& ctx, const std::function<RealMatrix(const ChartPoint&)>& f,
                            const ChartPoint& xi, int mu, double max_step) {
  const double h = std::min(outer_step(ctx, xi, mu), max_step);
  if (ctx.scheme.richardson) return numeric::richardson_difference(f, xi, mu, h, 4);
  return numeric::central_difference(f, xi, mu, h, 4);
}

RealMatrix contravariant_density(const GeometricData& d, const RealMatrix& covectors) {
  return std::sqrt(d.g.determinant()) * (d.g_inv * covectors);
}

RealVector divergence(const Context& ctx, const ChartPoint& xi, const GeometricData& at_xi,
                      const std::function<RealMatrix(const ChartPoint&)>& density, double length_scale) {
  RealVector out;
  for (int mu = 0; mu < ctx.real_dim(); ++mu) {
    const RealVector row = outer_derivative(ctx, density, xi, mu, kLocalStepFraction * length_scale).row(mu).transpose();
    out = mu == 0 ? row : RealVector(out + row);
  }
  return out / std::sqrt(at_xi.g.determinant());
}

}  // namespace detail

RealVector berry_connection(const Context& ctx, const ChartPoint& xi) {
  return connection_from_jet(section_jet(ctx, xi));
}

GeometricData geometric_data(const Context& ctx, const ChartPoint& xi) {
  return geometric_data(ctx, xi, section_jet(ctx, xi));
}

GeometricData geometric_data(const Context& ctx, const ChartPoint& xi, const SectionJet& jet) {
  const int n = ctx.real_dim();
  GeometricData d;
  d.q = ctx.q;
  d.A = connection_from_jet(jet);

  const ComplexVector& psi = jet.psi.components();
  ComplexMatrix cov(psi.size(), n);
  for (int mu = 0; mu < n; ++mu) cov.col(mu) = jet.partials[mu] - cplx(0.0, d.A[mu]) * psi;
  d.H = ctx.q * (cov.adjoint() * cov);
  d.g = d.H.real();
  d.g = 0.5 * (d.g + d.g.transpose()).eval();
  d.omega = d.H.imag();
  d.omega = 0.5 * (d.omega - d.omega.transpose()).eval();
  d.J = ctx.coords.complex_structure(xi);

  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(d.g, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= kDegenerateMetricTolerance) {
    throw Error(ErrorCode::DegenerateMetric, "quantum metric is degenerate at this point");
  }
  d.g_inv = d.g.inverse();
  return d;
}

double kahler_potential(const HolomorphicFamily& family, const ComplexVector& z, double q) {
  const double n2 = family.eval(z).squaredNorm();
  if (!(n2 > 1e-300)) throw Error(ErrorCode::ZeroNorm, family.name() + ": family vector vanishes");
  return 0.5 * q * std::log(n2);
}

ComplexMatrix metric_from_potential(const Context& ctx, const ComplexVector& z) {
  const int k = ctx.k();
  auto log_norm = [&](const RealVector& x) { return std::log(ctx.family->eval(cartesian_z(x)).squaredNorm()); };
  const ChartPoint x = cartesian_point(z);
  RealMatrix hess(2 * k, 2 * k);
  for (int mu = 0; mu < 2 * k; ++mu) {
    for (int nu = mu; nu < 2 * k; ++nu) {
      hess(mu, nu) = numeric::second_partial(log_norm, x, mu, nu, kPotentialStep);
      hess(nu, mu) = hess(mu, nu);
    }
  }
  // d_a d_bbar = (1/4)(d_xa - i d_ya)(d_xb + i d_yb)
  ComplexMatrix out(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const double re = hess(2 * a, 2 * b) + hess(2 * a + 1, 2 * b + 1);
      const double im = hess(2 * a, 2 * b + 1) - hess(2 * a + 1, 2 * b);
      out(a, b) = 0.125 * ctx.q * cplx(re, im);
    }
  }
  return out;
}

ChristoffelData christoffel(const Context& ctx, const ChartPoint& xi) {
  const GeometricData d = geometric_data(ctx, xi);
  return christoffel_from(d.g_inv, metric_partials(ctx, xi));
}

ComplexMatrix lower_coefficients(int k) {
  ComplexMatrix l = ComplexMatrix::Zero(2 * k, 2 * k);
  for (int a = 0; a < k; ++a) {
    l(2 * a, a) = 0.5;
    l(2 * a + 1, a) = cplx(0.0, -0.5);
    l(2 * a, k + a) = 0.5;
    l(2 * a + 1, k + a) = cplx(0.0, 0.5);
  }
  return l;
}

ComplexMatrix raise_coefficients(int k) {
  ComplexMatrix u = ComplexMatrix::Zero(2 * k, 2 * k);
  for (int a = 0; a < k; ++a) {
    u(a, 2 * a) = 1.0;
    u(a, 2 * a + 1) = cplx(0.0, 1.0);
    u(k + a, 2 * a) = 1.0;
    u(k + a, 2 * a + 1) = cplx(0.0, -1.0);
  }
  return u;
}

ComplexMatrix complex_components(const RealMatrix& t) {
  const ComplexMatrix l = lower_coefficients(static_cast<int>(t.rows() / 2));
  return l.transpose() * t.cast<cplx>() * l;
}

ComplexMatrix hermitian_block(const RealMatrix& g) {
  const auto k = g.rows() / 2;
  return complex_components(g).block(0, k, k, k);
}

RealMatrix covariant_to_cartesian(const Context& ctx, const ChartPoint& xi, const RealMatrix& t) {
  if (ctx.coords.kind() == Coordinates::Kind::Cartesian) return t;
  const RealMatrix m_inv = ctx.coords.real_jacobian(xi).inverse();
  return m_inv.transpose() * t * m_inv;
}

std::vector<std::pair<std::string, double>> StructureReport::entries() const {
  return {{"mixed_type", mixed_type},
          {"curvature", curvature},
          {"complex_structure", complex_structure},
          {"hermitian", hermitian},
          {"kahler_form", kahler_form},
          {"parallel_j", parallel_j},
          {"closed_form", closed_form},
          {"christoffel_mixed", christoffel_mixed},
          {"christoffel_hermitian", christoffel_hermitian},
          {"kahler_symmetry", kahler_symmetry},
          {"kahler_symmetry_conj", kahler_symmetry_conj},
          {"potential", potential}};
}

double StructureReport::max() const {
  double m = 0.0;
  for (const auto& [name, value] : entries()) m = std::max(m, value);
  return m;
}

StructureReport verify_structure(const Context& ctx, const ChartPoint& xi) {
  StructureReport r;
  const int n = ctx.real_dim();
  const int k = ctx.k();
  const GeometricData d = geometric_data(ctx, xi);

  // Real-coordinate identities in the context's own chart.
  r.complex_structure = max_abs(RealMatrix(d.J * d.J + RealMatrix::Identity(n, n)));
  r.hermitian = max_abs(RealMatrix(d.J.transpose() * d.g * d.J - d.g));
  r.kahler_form = max_abs(RealMatrix(d.omega - d.J.transpose() * d.g));

  auto connection = [&](const ChartPoint& p) { return RealMatrix(berry_connection(ctx, p)); };
  RealMatrix dA(n, n);  // dA(mu, nu) = d_mu A_nu
  for (int mu = 0; mu < n; ++mu) dA.row(mu) = detail::outer_derivative(ctx, connection, xi, mu).transpose();
  r.curvature = max_abs(RealMatrix(d.omega - 0.5 * ctx.q * (dA - dA.transpose())));

  const std::vector<RealMatrix> dg = metric_partials(ctx, xi);
  const ChristoffelData gamma = christoffel_from(d.g_inv, dg);
  auto complex_structure = [&](const ChartPoint& p) { return ctx.coords.complex_structure(p); };
  for (int mu = 0; mu < n; ++mu) {
    RealMatrix gm(n, n);
    for (int nu = 0; nu < n; ++nu) gm.row(nu) = gamma.gamma[nu].row(mu);
    const RealMatrix dj = ctx.coords.kind() == Coordinates::Kind::Cartesian
                              ? RealMatrix::Zero(n, n)
                              : detail::outer_derivative(ctx, complex_structure, xi, mu);
    r.parallel_j = std::max(r.parallel_j, max_abs(RealMatrix(dj + gm * d.J - d.J * gm)));
  }

  if (n > 2) {
    std::vector<RealMatrix> domega;
    auto omega = [&](const ChartPoint& p) { return geometric_data(ctx, p).omega; };
    for (int mu = 0; mu < n; ++mu) domega.push_back(detail::outer_derivative(ctx, omega, xi, mu));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          r.closed_form = std::max(r.closed_form, std::abs(domega[a](b, c) + domega[b](c, a) + domega[c](a, b)));
  }

  // Complex-coordinate identities, evaluated in the Cartesian chart at the same point.
  const Context cart = ctx.cartesian();
  const ComplexVector z = ctx.coords.to_z(xi);
  const ChartPoint xc = cartesian_point(z);
  const GeometricData dc = geometric_data(cart, xc);

  const ComplexMatrix hc = lower_coefficients(k).transpose() * dc.H * lower_coefficients(k);
  ComplexMatrix masked = hc;
  masked.block(k, 0, k, k).setZero();
  r.mixed_type = max_abs(masked);

  const std::vector<RealMatrix> dgc = cart.coords.kind() == ctx.coords.kind() ? dg : metric_partials(cart, xc);
  const ChristoffelData gc = christoffel_from(dc.g_inv, dgc);
  const ComplexMatrix l = lower_coefficients(k);
  const ComplexMatrix u = raise_coefficients(k);
  std::vector<ComplexMatrix> gcomplex;  // Gamma^A_{BC}
  for (int A = 0; A < 2 * k; ++A) {
    ComplexMatrix m = ComplexMatrix::Zero(2 * k, 2 * k);
    for (int mu = 0; mu < 2 * k; ++mu) m += u(A, mu) * gc.gamma[mu].cast<cplx>();
    gcomplex.push_back(l.transpose() * m * l);
  }
  for (int A = 0; A < 2 * k; ++A) {
    for (int B = 0; B < 2 * k; ++B) {
      for (int C = 0; C < 2 * k; ++C) {
        const bool pure = (A < k && B < k && C < k) || (A >= k && B >= k && C >= k);
        if (!pure) r.christoffel_mixed = std::max(r.christoffel_mixed, std::abs(gcomplex[A](B, C)));
      }
    }
  }

  const ComplexMatrix G = hermitian_block(dc.g);
  const ComplexMatrix W = G.inverse();
  std::vector<ComplexMatrix> dhol, danti;  // d_b G, d_bbar G
  for (int b = 0; b < k; ++b) {
    const ComplexMatrix dx = hermitian_block(dgc[2 * b]);
    const ComplexMatrix dy = hermitian_block(dgc[2 * b + 1]);
    dhol.push_back(0.5 * (dx - cplx(0.0, 1.0) * dy));
    danti.push_back(0.5 * (dx + cplx(0.0, 1.0) * dy));
  }
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      for (int c = 0; c < k; ++c) {
        cplx expected = 0.0;
        for (int dd = 0; dd < k; ++dd) expected += W(dd, a) * dhol[b](c, dd);
        r.christoffel_hermitian = std::max(r.christoffel_hermitian, std::abs(gcomplex[a](b, c) - expected));
        r.kahler_symmetry = std::max(r.kahler_symmetry, std::abs(dhol[c](a, b) - dhol[a](c, b)));
        r.kahler_symmetry_conj = std::max(r.kahler_symmetry_conj, std::abs(danti[c](b, a) - danti[a](b, c)));
      }
    }
  }

  r.potential = max_abs(ComplexMatrix(metric_from_potential(cart, z) - G));
  return r;
}

}  // namespace holobundle
