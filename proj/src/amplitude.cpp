// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/amplitude.hpp"

#include <algorithm>
#include <cmath>

#include "holobundle/error.hpp"
#include "holobundle/numeric.hpp"

namespace holobundle {

namespace {

constexpr double kHessianStep = 1e-3;

void require_dim(const StateVector& psi_f, const Context& ctx) {
  if (psi_f.dim() != ctx.family->dim()) {
    throw Error(ErrorCode::DimensionMismatch, "final state does not match the family's Hilbert dimension");
  }
}

// Point data on a path; vanishing amplitudes become PathSingularity at s.
PointData path_point(const StateVector& psi_f, const Context& ctx, double s, const ChartPoint& xi) {
  try {
    PointData d = point_data(psi_f, ctx, xi);
    if (d.polar.p() <= kPathProbabilityFloor) throw PathSingularity(s, d.polar.p());
    return d;
  } catch (const PathSingularity&) {
    throw;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::AmplitudeVanishes) throw;
    const double p = std::norm(inner_product(psi_f.components(), section_vector(ctx, xi)));
    throw PathSingularity(s, p);
  }
}

// d_a d_bbar of a scalar function of Cartesian coordinates, k x k.
ComplexMatrix wirtinger_hessian(const std::function<double(const RealVector&)>& f, const ChartPoint& x, int k) {
  RealMatrix hess(2 * k, 2 * k);
  for (int mu = 0; mu < 2 * k; ++mu) {
    for (int nu = mu; nu < 2 * k; ++nu) {
      hess(mu, nu) = numeric::second_partial(f, x, mu, nu, kHessianStep);
      hess(nu, mu) = hess(mu, nu);
    }
  }
  ComplexMatrix out(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      out(a, b) = 0.25 * cplx(hess(2 * a, 2 * b) + hess(2 * a + 1, 2 * b + 1),
                              hess(2 * a, 2 * b + 1) - hess(2 * a + 1, 2 * b));
    }
  }
  return out;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<TraceRow> make_trace(const StateVector& psi_f, const Context& ctx, const PathSpec& path, int steps,
                                 const std::function<double(const PointData&, const RealVector&)>& integrand) {
  std::vector<TraceRow> rows;
  if (steps <= 0) return rows;
  double eta = 0.0;
  auto add = [&](int piece, double t) {
    const ChartPoint xi = path.point(piece, t);
    const PointData d = path_point(psi_f, ctx, piece + t, xi);
    eta = rows.empty() ? d.polar.eta : numeric::nearest_branch(d.polar.eta, eta);
    rows.push_back({piece + t, xi, d.polar.sqrt_p, eta, integrand(d, path.tangent(piece, t))});
  };
  if (path.empty()) {
    const PointData d = path_point(psi_f, ctx, 0.0, path.start());
    rows.push_back({0.0, path.start(), d.polar.sqrt_p, d.polar.eta, 0.0});
    return rows;
  }
  for (int piece = 0; piece < path.pieces(); ++piece) {
    for (int i = piece == 0 ? 0 : 1; i <= steps; ++i) add(piece, static_cast<double>(i) / steps);
  }
  return rows;
}

}  // namespace

AmplitudePolar polar_amplitude(const StateVector& psi_f, const SectionJet& jet, const RealVector& A) {
  const ComplexVector& f = psi_f.components();
  if (f.size() != jet.psi.dim()) throw Error(ErrorCode::DimensionMismatch, "final state has wrong dimension");
  AmplitudePolar out;
  out.amplitude = f.dot(jet.psi.components());
  const double p = std::norm(out.amplitude);
  if (p <= kPointProbabilityFloor) {
    throw Error(ErrorCode::AmplitudeVanishes, "transition amplitude vanishes (p = " + std::to_string(p) + ")");
  }
  out.sqrt_p = std::sqrt(p);
  out.eta = std::arg(out.amplitude);
  const auto n = static_cast<Eigen::Index>(jet.partials.size());
  out.grad_log_sqrt_p.resize(n);
  out.V.resize(n);
  for (Eigen::Index mu = 0; mu < n; ++mu) {
    const cplx ratio = f.dot(jet.partials[static_cast<std::size_t>(mu)]) / out.amplitude;
    out.grad_log_sqrt_p[mu] = ratio.real();
    out.V[mu] = ratio.imag() - A[mu];
  }
  out.A = A;
  return out;
}

AmplitudePolar polar_amplitude(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi) {
  require_dim(psi_f, ctx);
  const SectionJet jet = section_jet(ctx, xi);
  return polar_amplitude(psi_f, jet, geometric_data(ctx, xi, jet).A);
}

PointData point_data(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi) {
  require_dim(psi_f, ctx);
  const SectionJet jet = section_jet(ctx, xi);
  GeometricData g = geometric_data(ctx, xi, jet);
  AmplitudePolar polar = polar_amplitude(psi_f, jet, g.A);
  return {std::move(g), std::move(polar)};
}

CauchyRiemannResidual cr_residual(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi) {
  const PointData d = point_data(psi_f, ctx, xi);
  const RealMatrix om = d.geometry.omega_mixed();
  const RealVector& u = d.polar.grad_log_sqrt_p;
  const RealVector& v = d.polar.V;
  return {d.geometry.norm(u - om * v), d.geometry.norm(v + om * u)};
}

NormCheck orthogonality_and_norm_check(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi) {
  const PointData d = point_data(psi_f, ctx, xi);
  const RealVector& u = d.polar.grad_log_sqrt_p;
  const RealVector grad_p = 2.0 * d.polar.p() * u;
  return {std::abs(d.geometry.norm(u) - d.geometry.norm(d.polar.V)), std::abs(d.geometry.dot(grad_p, d.polar.V))};
}

std::vector<std::pair<std::string, double>> ScalarReport::entries() const {
  std::vector<std::pair<std::string, double>> out = {{"div_V", div_V},           {"lap_log", lap_log},
                                                     {"kahler_pot", kahler_pot}, {"continuity", continuity},
                                                     {"hj", hj},                 {"schrodinger", schrodinger}};
  if (mixed_hessian_eta) out.emplace_back("mixed_hessian_eta", *mixed_hessian_eta);
  return out;
}

ScalarReport scalar_identities(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi) {
  const PointData c = point_data(psi_f, ctx, xi);
  const double k = ctx.k();
  const double q = ctx.q;

  auto covectors = [](const PointData& d) {
    const auto n = d.polar.V.size();
    const RealVector& u = d.polar.grad_log_sqrt_p;
    const RealVector& v = d.polar.V;
    const cplx a = d.polar.amplitude;
    RealMatrix w(n, 6);
    w.col(0) = v;
    w.col(1) = u;
    w.col(2) = d.polar.p() * v;
    w.col(3) = d.polar.sqrt_p * u;
    // D a = a (d log sqrt p + i V)
    w.col(4) = a.real() * u - a.imag() * v;
    w.col(5) = a.imag() * u + a.real() * v;
    return w;
  };
  auto density = [&](const ChartPoint& p) {
    const PointData d = point_data(psi_f, ctx, p);
    return detail::contravariant_density(d.geometry, covectors(d));
  };
  const RealVector div = detail::divergence(ctx, xi, c.geometry, density, c.polar.length_scale());

  ScalarReport r;
  const RealVector& v = c.polar.V;
  r.div_V = std::abs(div[0]);
  r.lap_log = std::abs(div[1] + 2.0 * k / q);
  r.continuity = std::abs(div[2]);
  r.hj = std::abs(0.5 * c.geometry.dot(v, v) - 0.5 * div[3] / c.polar.sqrt_p - k / q);

  const RealMatrix w = covectors(c);
  const RealVector a_up = c.geometry.g_inv * c.polar.A;
  const cplx a_dot_da(a_up.dot(w.col(4)), a_up.dot(w.col(5)));
  const cplx laplacian = cplx(div[4], div[5]) - cplx(0.0, 1.0) * a_dot_da;
  r.schrodinger = std::abs(-0.5 * laplacian - (k / q) * c.polar.amplitude) / c.polar.sqrt_p;

  // Complex Hessians in the Cartesian chart at the same point.
  const Context cart = ctx.cartesian();
  const ComplexVector z = ctx.coords.to_z(xi);
  const ChartPoint xc = cartesian_point(z);
  const ComplexVector& f = psi_f.components();
  auto log_sqrt_p = [&](const RealVector& x) { return std::log(std::abs(f.dot(section_vector(cart, x)))); };
  const ComplexMatrix g_block = hermitian_block(geometric_data(cart, xc).g);
  r.kahler_pot = max_abs(ComplexMatrix(q * wirtinger_hessian(log_sqrt_p, xc, ctx.k()) + g_block));

  if (ctx.gauge.restricted()) {
    const double eta0 = c.polar.eta;
    auto eta = [&](const RealVector& x) {
      return numeric::nearest_branch(std::arg(f.dot(section_vector(cart, x))), eta0);
    };
    r.mixed_hessian_eta = max_abs(wirtinger_hessian(eta, xc, ctx.k()));
  }
  return r;
}

double direct_phase_change(const StateVector& psi_f, const Context& ctx, const PathSpec& path) {
  require_dim(psi_f, ctx);
  const ComplexVector& f = psi_f.components();
  return unwrapped_change(path, [&](double s, const ChartPoint& xi) {
    const cplx a = f.dot(section_vector(ctx, xi));
    if (std::norm(a) <= kPathProbabilityFloor) throw PathSingularity(s, std::norm(a));
    return std::arg(a);
  });
}

Reconstruction reconstruct_phase(const StateVector& psi_f, const Context& ctx, const PathSpec& path,
                                 const ReconstructionOptions& options) {
  require_dim(psi_f, ctx);
  auto integrand = [](const PointData& d, const RealVector& t) {
    const RealVector w = d.polar.A - d.geometry.omega_mixed() * d.polar.grad_log_sqrt_p;
    return w.dot(t);
  };
  const LineIntegral li = line_integral(
      path,
      [&](double s, const ChartPoint& xi, const RealVector& t) { return integrand(path_point(psi_f, ctx, s, xi), t); },
      options.tol);
  Reconstruction r;
  r.value = li.value;
  r.intervals = li.intervals;
  r.direct = direct_phase_change(psi_f, ctx, path);
  r.trace = make_trace(psi_f, ctx, path, options.trace_steps, integrand);
  return r;
}

Reconstruction reconstruct_modulus(const StateVector& psi_f, const Context& ctx, const PathSpec& path,
                                   const ReconstructionOptions& options) {
  require_dim(psi_f, ctx);
  auto integrand = [](const PointData& d, const RealVector& t) {
    return RealVector(d.geometry.omega_mixed() * d.polar.V).dot(t);
  };
  const LineIntegral li = line_integral(
      path,
      [&](double s, const ChartPoint& xi, const RealVector& t) { return integrand(path_point(psi_f, ctx, s, xi), t); },
      options.tol);
  Reconstruction r;
  r.value = std::exp(li.value);
  r.intervals = li.intervals;
  const double start = path_point(psi_f, ctx, 0.0, path.start()).polar.sqrt_p;
  const double end = path_point(psi_f, ctx, path.pieces(), path.end()).polar.sqrt_p;
  r.direct = end / start;
  r.trace = make_trace(psi_f, ctx, path, options.trace_steps, integrand);
  return r;
}

double circulation(const StateVector& psi_f, const Context& ctx, const PathSpec& loop, double tol) {
  require_dim(psi_f, ctx);
  if (!is_closed(ctx, loop)) throw Error(ErrorCode::OpenPath, "circulation needs a closed loop");
  return line_integral(
             loop,
             [&](double s, const ChartPoint& xi, const RealVector& t) {
               return path_point(psi_f, ctx, s, xi).polar.V.dot(t);
             },
             tol)
      .value;
}

}  // namespace holobundle
