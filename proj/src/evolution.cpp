// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "holobundle/error.hpp"
#include "holobundle/numeric.hpp"
#include "holobundle/ray_space.hpp"

namespace holobundle {

namespace {

constexpr double kHermiticityTolerance = 1e-12;
constexpr int kHamiltonianSamples = 11;

ComplexMatrix pauli_combination(double x, double y, double z) {
  ComplexMatrix m(2, 2);
  m << cplx(z, 0.0), cplx(x, -y), cplx(x, y), cplx(-z, 0.0);
  return m;
}

void require_normalized(const StateVector& v, const char* what) {
  if (!v.is_normalized()) throw Error(ErrorCode::NotNormalized, std::string(what) + " is not normalized");
}

AmplitudePolar polar_on_path(const StateVector& psi_f, const Context& ctx, double s, const ChartPoint& xi,
                             GeometricData* geometry) {
  PointData d = [&] {
    try {
      return point_data(psi_f, ctx, xi);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AmplitudeVanishes) throw;
      throw PathSingularity(s, 0.0);
    }
  }();
  if (d.polar.p() <= kPathProbabilityFloor) throw PathSingularity(s, d.polar.p());
  if (geometry != nullptr) *geometry = d.geometry;
  return d.polar;
}

}  // namespace

HamiltonianSpec HamiltonianSpec::constant(ComplexMatrix h, double duration) {
  if (h.rows() != h.cols() || h.rows() < 2) throw Error(ErrorCode::InvalidArgument, "Hamiltonian must be square, N >= 2");
  if (!(duration >= 0.0)) throw Error(ErrorCode::InvalidArgument, "duration must be non-negative");
  HamiltonianSpec spec;
  spec.dim = static_cast<int>(h.rows());
  spec.duration = duration;
  spec.matrix = [h = std::move(h)](double) { return h; };
  return spec;
}

HamiltonianSpec HamiltonianSpec::precession(double omega, double duration, std::array<double, 3> axis) {
  const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "precession axis must be nonzero");
  const double s = 0.5 * omega / n;
  return constant(pauli_combination(s * axis[0], s * axis[1], s * axis[2]), duration);
}

HamiltonianSpec HamiltonianSpec::from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    const double duration = j.at("duration").get<double>();
    if (kind == "precession") {
      std::array<double, 3> axis{0.0, 0.0, 1.0};
      if (j.contains("axis")) axis = j.at("axis").get<std::array<double, 3>>();
      return precession(j.at("omega").get<double>(), duration, axis);
    }
    if (kind == "constant") {
      const auto& rows = j.at("matrix");
      const auto n = static_cast<Eigen::Index>(rows.size());
      ComplexMatrix m(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        if (static_cast<Eigen::Index>(rows[r].size()) != n) throw Error(ErrorCode::ConfigInvalid, "matrix must be square");
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = cplx(rows[r][c].at(0).get<double>(), rows[r][c].at(1).get<double>());
      }
      return constant(std::move(m), duration);
    }
    throw Error(ErrorCode::ConfigInvalid, "unknown Hamiltonian kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("Hamiltonian JSON: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) throw Error(ErrorCode::ConfigInvalid, e.what());
    throw;
  }
}

double EvolutionTrace::decomposition_residual() const {
  double r = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    r = std::max(r, std::abs(beta[i] - beta.front() - dynamical[i] - geometric[i]));
  }
  return r;
}

EvolutionTrace evolve_schrodinger(const HamiltonianSpec& h, const StateVector& psi0, double dt) {
  if (!h.matrix) throw Error(ErrorCode::InvalidArgument, "Hamiltonian has no matrix");
  if (psi0.dim() != h.dim) throw Error(ErrorCode::DimensionMismatch, "initial state does not match the Hamiltonian");
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");

  double spectral = 0.0;
  for (int i = 0; i < kHamiltonianSamples; ++i) {
    const ComplexMatrix m = h.matrix(h.duration * i / (kHamiltonianSamples - 1));
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTolerance) {
      throw Error(ErrorCode::InvalidArgument, "Hamiltonian is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(m, Eigen::EigenvaluesOnly);
    spectral = std::max(spectral, eig.eigenvalues().cwiseAbs().maxCoeff());
  }
  if (spectral > 0.0 && dt > 0.01 / spectral) {
    throw Error(ErrorCode::StepTooLarge, "dt = " + std::to_string(dt) + " exceeds 0.01/|H| = " +
                                             std::to_string(0.01 / spectral));
  }

  const auto steps = h.duration > 0.0 ? static_cast<long>(std::ceil(h.duration / dt - 1e-9)) : 0L;
  const double step = steps > 0 ? h.duration / static_cast<double>(steps) : 0.0;

  EvolutionTrace trace;
  ComplexVector psi = psi0.components();
  auto record = [&](double t) {
    const ComplexMatrix m = h.matrix(t);
    const ComplexVector hpsi = m * psi;
    trace.times.push_back(t);
    trace.states.emplace_back(psi);
    trace.energies.push_back(psi.dot(hpsi).real());
    trace.rates.push_back(cplx(0.0, -1.0) * hpsi);
  };
  record(0.0);
  for (long i = 0; i < steps; ++i) {
    const double t = step * static_cast<double>(i);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h.matrix(t + 0.5 * step));
    const ComplexVector phases =
        (eig.eigenvalues().cast<cplx>() * cplx(0.0, -step)).array().exp().matrix();
    psi = eig.eigenvectors() * phases.asDiagonal() * (eig.eigenvectors().adjoint() * psi);
    record(step * static_cast<double>(i + 1));
  }
  return trace;
}

void phase_decomposition(EvolutionTrace& trace, const StateVector& psi_f, const Context& ctx) {
  const std::size_t n = trace.states.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty evolution trace");
  const HolomorphicFamily& fam = *ctx.family;

  trace.xi.assign(n, ChartPoint());
  trace.beta.assign(n, 0.0);
  std::vector<double> geometric_rate(n), connection_rate(n), energy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexVector& psi = trace.states[i].components();
    const ComplexVector z = fam.chart_from_state(psi);
    trace.xi[i] = ctx.coords.from_z(z, i > 0 ? &trace.xi[i - 1] : nullptr);
    if (!ctx.coords.contains(trace.xi[i])) throw Error(ErrorCode::ChartEscape, "state leaves the coordinate patch");

    const PointData d = point_data(psi_f, ctx, trace.xi[i]);
    const RealVector xi_dot = ctx.coords.velocity_from_z(trace.xi[i], fam.chart_velocity(psi, trace.rates[i]));
    geometric_rate[i] = -xi_dot.dot(d.geometry.omega_mixed() * d.polar.grad_log_sqrt_p);
    connection_rate[i] = -d.polar.A.dot(xi_dot);
    energy[i] = -trace.energies[i];

    const cplx a = psi_f.components().dot(psi);
    if (std::norm(a) <= kPointProbabilityFloor) {
      throw Error(ErrorCode::AmplitudeVanishes, "amplitude vanishes during evolution");
    }
    const double raw = std::arg(a);
    trace.beta[i] = i == 0 ? raw : numeric::nearest_branch(raw, trace.beta[i - 1]);
    if (i > 0 && std::abs(trace.beta[i] - trace.beta[i - 1]) > 0.5 * std::numbers::pi) {
      throw Error(ErrorCode::StepTooLarge, "phase jumps by more than pi/2 between grid times");
    }
  }
  const double spacing = n > 1 ? trace.times[1] - trace.times[0] : 0.0;
  trace.dynamical = numeric::cumulative_simpson(energy, spacing);
  trace.geometric = numeric::cumulative_simpson(geometric_rate, spacing);
  trace.connection = numeric::cumulative_simpson(connection_rate, spacing);
}

double cyclic_geometric_phase(const Context& ctx, const PathSpec& loop, double tol) {
  if (!is_closed(ctx, loop)) throw Error(ErrorCode::OpenPath, "geometric phase needs a closed loop");
  return -line_integral(
              loop, [&](double, const ChartPoint& xi, const RealVector& t) { return berry_connection(ctx, xi).dot(t); },
              tol)
              .value;
}

PancharatnamGeodesic pancharatnam_geodesic(const StateVector& psi_f, const StateVector& psi, const Context& ctx,
                                           double tol) {
  require_normalized(psi_f, "final state");
  require_normalized(psi, "state");
  const Context cart = ctx.cartesian();
  const HolomorphicFamily& fam = *ctx.family;

  PancharatnamGeodesic out;
  const ChartPoint start = cartesian_point(fam.chart_from_state(psi_f.components()));
  const ChartPoint end = cartesian_point(fam.chart_from_state(psi.components()));
  out.start_offset = std::arg(inner_product(evaluate_section(cart, start), psi_f));
  out.end_offset = std::arg(inner_product(evaluate_section(cart, end), psi));

  if (std::abs(inner_product(psi_f, psi)) < 1.0 - 1e-15) {
    // Validates the pair (AntipodalRays) before building the path.
    (void)hilbert_geodesic(psi_f, psi, 0.5);
    const PathSpec path = PathSpec::parametric(
        [&](double t) { return ChartPoint(cartesian_point(fam.chart_from_state(hilbert_geodesic(psi_f, psi, t).components()))); });
    out.connection_integral =
        line_integral(
            path, [&](double, const ChartPoint& xi, const RealVector& t) { return berry_connection(cart, xi).dot(t); },
            tol)
            .value;
  }
  out.total = out.connection_integral + out.end_offset - out.start_offset;
  return out;
}

PancharatnamPath pancharatnam_path(const StateVector& psi_f, const Context& ctx, const PathSpec& path, double tol) {
  if (!ctx.family->ray_space()) {
    throw Error(ErrorCode::NotRaySpaceFamily, ctx.family->name() + " does not chart the full ray space");
  }
  require_normalized(psi_f, "final state");
  const double root_q = std::sqrt(ctx.q);

  PancharatnamPath out;
  out.offset = polar_on_path(psi_f, ctx, 0.0, path.start(), nullptr).eta;
  out.connection =
      line_integral(
          path, [&](double, const ChartPoint& xi, const RealVector& t) { return berry_connection(ctx, xi).dot(t); }, tol)
          .value;
  out.correction =
      line_integral(
          path,
          [&](double s, const ChartPoint& xi, const RealVector& t) {
            GeometricData g;
            const AmplitudePolar a = polar_on_path(psi_f, ctx, s, xi, &g);
            const double p = a.p();
            RealVector w;
            if (1.0 - p < 1e-14) {
              // limit of ds tan(s/sqrt q)/sqrt q as p -> 1
              w = -a.grad_log_sqrt_p;
            } else {
              // s = sqrt(q) arccos(sqrt p)
              const double dist = root_q * std::acos(std::min(1.0, a.sqrt_p));
              const RealVector ds = (-root_q * a.sqrt_p / std::sqrt(1.0 - p)) * a.grad_log_sqrt_p;
              w = (std::tan(dist / root_q) / root_q) * ds;
            }
            return RealVector(g.omega_mixed() * w).dot(t);
          },
          tol)
          .value;
  out.total = out.offset + out.connection + out.correction;
  out.direct = out.offset + direct_phase_change(psi_f, ctx, path);
  return out;
}

}  // namespace holobundle
