// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/ray_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holobundle/error.hpp"
#include "holobundle/numeric.hpp"
#include "holobundle/parallel.hpp"

namespace holobundle {

namespace {

constexpr double kSingularSpeed = 1e-10;
constexpr long kSampleChunk = 8192;

void require_normalized(const StateVector& v, const char* what) {
  if (!v.is_normalized()) throw Error(ErrorCode::NotNormalized, std::string(what) + " is not normalized");
}

void require_ray_space(const Context& ctx) {
  if (!ctx.family->ray_space()) {
    throw Error(ErrorCode::NotRaySpaceFamily, ctx.family->name() + " does not chart the full ray space");
  }
}

struct FlowFields {
  RealMatrix g;
  RealMatrix g_inv;
  RealMatrix omega;
  ChristoffelData gamma;
};

FlowFields flow_fields(const Context& ctx, const ChartPoint& xi) {
  const GeometricData d = geometric_data(ctx, xi);
  return {d.g, d.g_inv, d.omega, christoffel(ctx, xi)};
}

// d/ds (xi, v) for the charged-particle equation.
std::pair<RealVector, RealVector> flow_rhs(const Context& ctx, double e, const RealVector& xi, const RealVector& v) {
  const FlowFields f = flow_fields(ctx, xi);
  const RealVector lorentz = (2.0 / ctx.q) * (f.g_inv * (f.omega * v));
  return {v, -f.gamma.contract(v, v) + e * lorentz};
}

double speed_of(const PointData& d) { return d.geometry.norm(d.polar.V); }

PointData flow_point(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi) {
  PointData d = [&] {
    try {
      return point_data(psi_f, ctx, xi);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::AmplitudeVanishes) throw Error(ErrorCode::SingularPoint, e.what());
      throw;
    }
  }();
  if (speed_of(d) < kSingularSpeed) throw Error(ErrorCode::SingularPoint, "phase gradient vanishes on the flow");
  return d;
}

}  // namespace

double fs_distance(const StateVector& a, const StateVector& b, double q) {
  require_normalized(a, "first state");
  require_normalized(b, "second state");
  const double overlap = std::min(1.0, std::abs(inner_product(a, b)));
  return std::sqrt(q) * std::acos(overlap);
}

DistanceResiduals probability_distance_check(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi) {
  require_ray_space(ctx);
  require_normalized(psi_f, "final state");
  const PointData d = point_data(psi_f, ctx, xi);
  const double p = d.polar.p();
  const double s = fs_distance(psi_f, evaluate_section(ctx, xi), ctx.q);
  const RealVector& u = d.polar.grad_log_sqrt_p;
  const RealVector grad_p = 2.0 * p * u;
  DistanceResiduals r;
  r.distance = std::abs(d.polar.sqrt_p - std::cos(s / std::sqrt(ctx.q)));
  r.gradient = std::abs(ctx.q * d.geometry.dot(u, u) - (1.0 / p - 1.0));
  r.variance = std::abs(d.geometry.dot(grad_p, grad_p) - (4.0 / ctx.q) * p * (1.0 - p));
  return r;
}

double wkb_probability(const RealVector& V, const RealMatrix& g_inv, double q) {
  return 1.0 / (1.0 + q * V.dot(g_inv * V));
}

double distance_gradient_norm(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi) {
  require_normalized(psi_f, "final state");
  auto s = [&](const RealVector& p) { return fs_distance(psi_f, evaluate_section(ctx, p), ctx.q); };
  RealVector grad(ctx.real_dim());
  for (int mu = 0; mu < ctx.real_dim(); ++mu) {
    grad[mu] = numeric::central_difference(s, xi, mu, numeric::scaled_step(ctx.scheme.h, xi[mu]), ctx.scheme.order);
  }
  return geometric_data(ctx, xi).norm(grad);
}

StateVector hilbert_geodesic(const StateVector& a, const StateVector& b, double t) {
  require_normalized(a, "geodesic start");
  require_normalized(b, "geodesic end");
  const cplx overlap = inner_product(a, b);
  const double c = std::abs(overlap);
  if (c <= 1e-12) throw Error(ErrorCode::AntipodalRays, "orthogonal rays are joined by many geodesics");
  if (c >= 1.0 - 1e-15) throw Error(ErrorCode::IdenticalRays, "geodesic between identical rays is degenerate");
  // Align b so that <a|b'> is real and positive.
  const ComplexVector aligned = (std::conj(overlap) / c) * b.components();
  const double sigma = std::acos(std::min(1.0, c));
  ComplexVector perp = aligned - c * a.components();
  perp /= perp.norm();
  return StateVector(std::cos(t * sigma) * a.components() + std::sin(t * sigma) * perp);
}

FlowState phase_flow_start(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi) {
  const PointData d = flow_point(psi_f, ctx, xi);
  FlowState st;
  st.xi = xi;
  st.speed = speed_of(d);
  st.v = d.geometry.g_inv * d.polar.V / st.speed;
  st.e_const = (1.0 - ctx.q * st.speed * st.speed) / (2.0 * st.speed);
  st.p = d.polar.p();
  return st;
}

FlowState phase_flow_step(const StateVector& psi_f, const Context& ctx, const FlowState& state, double ds) {
  const double e = state.e_const;
  const auto [k1x, k1v] = flow_rhs(ctx, e, state.xi, state.v);
  const auto [k2x, k2v] = flow_rhs(ctx, e, state.xi + 0.5 * ds * k1x, state.v + 0.5 * ds * k1v);
  const auto [k3x, k3v] = flow_rhs(ctx, e, state.xi + 0.5 * ds * k2x, state.v + 0.5 * ds * k2v);
  const auto [k4x, k4v] = flow_rhs(ctx, e, state.xi + ds * k3x, state.v + ds * k3v);

  FlowState next = state;
  next.xi = state.xi + (ds / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
  next.v = state.v + (ds / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  next.s = state.s + ds;

  const PointData d = flow_point(psi_f, ctx, next.xi);
  next.v /= std::sqrt(next.v.dot(d.geometry.g * next.v));
  next.speed = speed_of(d);
  next.p = d.polar.p();
  return next;
}

std::vector<FlowState> phase_flow(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi,
                                  double arclength, double ds, int stride) {
  if (!(ds > 0.0) || !(arclength >= 0.0)) throw Error(ErrorCode::InvalidArgument, "flow needs ds > 0, length >= 0");
  stride = std::max(1, stride);
  std::vector<FlowState> out{phase_flow_start(psi_f, ctx, xi)};
  const auto steps = static_cast<long>(std::ceil(arclength / ds - 1e-9));
  const double h = steps > 0 ? arclength / static_cast<double>(steps) : ds;
  FlowState st = out.front();
  for (long i = 1; i <= steps; ++i) {
    st = phase_flow_step(psi_f, ctx, st, h);
    if (i % stride == 0 || i == steps) out.push_back(st);
  }
  return out;
}

StateVector ray_uniform_sample(int n, std::mt19937_64& rng) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "Hilbert dimension must be at least 2");
  std::normal_distribution<double> normal;
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = cplx(re, im);
  }
  return StateVector(v).normalized();
}

RaySample ray_uniform_sample(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return {ray_uniform_sample(n, rng), seed};
}

SampleStats mean_transition_probability(const StateVector& psi_f, long samples, std::uint64_t seed, int threads) {
  require_normalized(psi_f, "final state");
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  const int n = static_cast<int>(psi_f.dim());
  const auto chunks = static_cast<std::size_t>((samples + kSampleChunk - 1) / kSampleChunk);
  std::vector<double> sum(chunks), sum_sq(chunks);
  parallel_for(chunks, resolve_threads(threads), [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    const long begin = static_cast<long>(c) * kSampleChunk;
    const long end = std::min(samples, begin + kSampleChunk);
    for (long i = begin; i < end; ++i) {
      const double p = std::norm(inner_product(psi_f, ray_uniform_sample(n, rng)));
      sum[c] += p;
      sum_sq[c] += p * p;
    }
  });
  double total = 0.0, total_sq = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    total += sum[c];
    total_sq += sum_sq[c];
  }
  const auto m = static_cast<double>(samples);
  SampleStats out;
  out.n = n;
  out.samples = samples;
  out.seed = seed;
  out.mean_p = total / m;
  const double variance = std::max(0.0, (total_sq - m * out.mean_p * out.mean_p) / (m - 1.0));
  out.stderr_p = std::sqrt(variance / m);
  return out;
}

double laplacian_eigen_residual(const StateVector& psi_f, const Context& ctx, const ChartPoint& xi) {
  require_ray_space(ctx);
  const PointData c = point_data(psi_f, ctx, xi);
  auto density = [&](const ChartPoint& p) {
    const PointData d = point_data(psi_f, ctx, p);
    return detail::contravariant_density(d.geometry, RealMatrix(2.0 * d.polar.p() * d.polar.grad_log_sqrt_p));
  };
  const double lap = detail::divergence(ctx, xi, c.geometry, density, c.polar.length_scale())[0];
  const double k = ctx.k();
  return std::abs(lap + (4.0 * (k + 1.0) / ctx.q) * (c.polar.p() - 1.0 / (k + 1.0)));
}

}  // namespace holobundle
