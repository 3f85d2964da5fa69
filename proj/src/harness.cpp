// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <tuple>

#include <json.hpp>

#include "holobundle/error.hpp"
#include "holobundle/evolution.hpp"
#include "holobundle/parallel.hpp"
#include "holobundle/ray_space.hpp"

#ifndef HOLOBUNDLE_VERSION
#define HOLOBUNDLE_VERSION "0.0.0"
#endif

namespace holobundle {

using nlohmann::json;

namespace {

constexpr double kMinVerifyProbability = 1e-3;
constexpr int kMaxStateDraws = 64;
constexpr int kMaxDtHalvings = 8;

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

json complex_list(const std::vector<cplx>& values) {
  json out = json::array();
  for (const cplx& c : values) out.push_back({c.real(), c.imag()});
  return out;
}

std::vector<cplx> parse_complex_list(const json& j) {
  std::vector<cplx> out;
  for (const auto& c : j) {
    if (c.is_number()) {
      out.emplace_back(c.get<double>(), 0.0);
    } else {
      out.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json parse_request(std::string_view text) {
  if (text.empty()) return json::object();
  try {
    json j = json::parse(text);
    if (!j.is_object()) config_error("request must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    config_error(std::string("request JSON: ") + e.what());
  }
}

template <class F>
auto with_config_errors(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    config_error(std::string("request: ") + e.what());
  }
}

ChartPoint parse_point(const json& j, int n) {
  const auto values = j.get<std::vector<double>>();
  if (static_cast<int>(values.size()) != n) {
    config_error("chart point needs " + std::to_string(n) + " coordinates, got " + std::to_string(values.size()));
  }
  return Eigen::Map<const RealVector>(values.data(), n);
}

// {"basis": i} | {"components": [[re, im], ...]} | {"section": [xi...]}
StateVector parse_state(const json& j, const Context* ctx, int dim) {
  if (j.contains("basis")) {
    const int i = j.at("basis").get<int>();
    if (i < 0 || i >= dim) config_error("basis index out of range");
    return StateVector::basis(dim, i);
  }
  if (j.contains("components")) {
    const auto c = parse_complex_list(j.at("components"));
    if (static_cast<int>(c.size()) != dim) config_error("state has the wrong number of components");
    return StateVector(Eigen::Map<const ComplexVector>(c.data(), dim)).normalized();
  }
  if (j.contains("section")) {
    if (ctx == nullptr) config_error("section states need a family");
    return evaluate_section(*ctx, parse_point(j.at("section"), ctx->real_dim()));
  }
  config_error("state spec needs one of basis, components, section");
}

PathSpec parse_path(const json& j, int n) {
  PathSpec path;
  if (j.contains("polyline")) {
    std::vector<ChartPoint> points;
    for (const auto& p : j.at("polyline")) points.push_back(parse_point(p, n));
    if (points.empty()) config_error("polyline needs points");
    path = PathSpec::polyline(std::move(points));
  } else if (j.contains("arc") || j.contains("circle")) {
    const bool full = j.contains("circle");
    const json& a = full ? j.at("circle") : j.at("arc");
    const auto plane = a.value("plane", std::vector<int>{0, 1});
    if (plane.size() != 2) config_error("arc plane needs two indices");
    const ChartPoint center = parse_point(a.at("center"), n);
    const double radius = a.at("radius").get<double>();
    path = full ? PathSpec::circle(center, radius, plane[0], plane[1])
                : PathSpec::arc(center, radius, a.at("from").get<double>(), a.at("to").get<double>(), plane[0],
                                plane[1]);
  } else if (j.contains("pieces")) {
    bool first = true;
    for (const auto& piece : j.at("pieces")) {
      if (first) {
        path = parse_path(piece, n);
        first = false;
      } else {
        path.then(parse_path(piece, n));
      }
    }
    if (first) config_error("pieces list is empty");
  } else {
    config_error("path spec needs one of polyline, arc, circle, pieces");
  }
  if (j.contains("n_steps")) path.n_steps = j.at("n_steps").get<int>();
  return path;
}

std::string csv_header(const std::vector<std::string>& before, int n, const std::vector<std::string>& after) {
  std::string h;
  for (const auto& c : before) h += (h.empty() ? "" : ",") + c;
  for (int i = 0; i < n; ++i) h += (h.empty() ? "" : ",") + ("xi" + std::to_string(i));
  for (const auto& c : after) h += "," + c;
  return h + "\n";
}

std::string csv_row(const std::vector<double>& before, const RealVector& xi, const std::vector<double>& after) {
  std::string r;
  for (double v : before) r += (r.empty() ? "" : ",") + fmt(v);
  for (Eigen::Index i = 0; i < xi.size(); ++i) r += (r.empty() ? "" : ",") + fmt(xi[i]);
  for (double v : after) r += "," + fmt(v);
  return r + "\n";
}

double tolerance_for(const RunConfig& config, const std::string& name) {
  if (auto it = config.tolerances.find(name); it != config.tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

// ---- verify ---------------------------------------------------------------

struct VerifyPoint {
  ChartPoint xi;
  StateVector psi_f;
};

ComplexVector random_disc_point(std::mt19937_64& rng, int k, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ComplexVector z(k);
  for (int a = 0; a < k; ++a) {
    const double r = radius * std::sqrt(unit(rng)) / std::sqrt(double(k));
    z[a] = std::polar(r, 2.0 * std::numbers::pi * unit(rng));
  }
  return z;
}

std::vector<VerifyPoint> verify_points(const RunConfig& config, const Context& ctx) {
  const double pi = std::numbers::pi;
  const int k = ctx.k();
  const int dim = ctx.family->dim();
  const bool polar = ctx.coords.kind() == Coordinates::Kind::BlochPolar;
  const bool bloch = ctx.family->name() == "bloch";
  const double radius = std::min(1.0, 0.5 * ctx.family->traits().domain_radius);
  std::mt19937_64 rng(config.seed);

  std::vector<ChartPoint> landmarks;
  if (bloch) {
    for (double theta : {pi / 6, pi / 2, 5 * pi / 6}) {
      ComplexVector z(1);
      z[0] = std::tan(0.5 * theta) * std::polar(1.0, 0.7);
      landmarks.push_back(ctx.coords.from_z(z));
    }
  } else {
    for (double scale : {0.0, 0.5, 0.9}) {
      ComplexVector z(k);
      for (int a = 0; a < k; ++a) z[a] = scale * radius / std::sqrt(double(k)) * std::polar(1.0, 0.7 + 1.3 * a);
      landmarks.push_back(ctx.coords.from_z(z));
    }
  }

  std::vector<VerifyPoint> points;
  auto choose_state = [&](const ChartPoint& xi) {
    const StateVector section = evaluate_section(ctx, xi);
    for (int attempt = 0; attempt < kMaxStateDraws; ++attempt) {
      StateVector f = ray_uniform_sample(dim, rng);
      if (std::norm(inner_product(f, section)) >= kMinVerifyProbability) return f;
    }
    throw Error(ErrorCode::Internal, "could not draw a final state with p >= 1e-3");
  };
  for (const auto& xi : landmarks) {
    points.push_back({xi, bloch ? StateVector::basis(2, 1) : choose_state(xi)});
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < config.n_points; ++i) {
    ChartPoint xi;
    if (polar) {
      xi.resize(2);
      xi[0] = 0.35 + (pi - 0.7) * unit(rng);
      xi[1] = pi * (2.0 * unit(rng) - 1.0);
    } else {
      xi = cartesian_point(random_disc_point(rng, k, radius));
    }
    points.push_back({xi, choose_state(xi)});
  }
  return points;
}

using Residuals = std::vector<std::pair<std::string, double>>;

Residuals evaluate_point(const Context& ctx, const VerifyPoint& pt) {
  Residuals out;
  for (const auto& [name, value] : verify_structure(ctx, pt.xi).entries()) out.emplace_back("structure." + name, value);
  const auto cr = cr_residual(pt.psi_f, ctx, pt.xi);
  out.emplace_back("cauchy_riemann.r1", cr.r1);
  out.emplace_back("cauchy_riemann.r2", cr.r2);
  const auto nc = orthogonality_and_norm_check(pt.psi_f, ctx, pt.xi);
  out.emplace_back("norm_equality", nc.norm_gap);
  out.emplace_back("orthogonality", nc.ortho);
  for (const auto& [name, value] : scalar_identities(pt.psi_f, ctx, pt.xi).entries()) {
    out.emplace_back("scalar." + name, value);
  }
  if (ctx.family->ray_space()) {
    const PointData d = point_data(pt.psi_f, ctx, pt.xi);
    const auto pd = probability_distance_check(pt.psi_f, ctx, pt.xi);
    out.emplace_back("ray.distance", pd.distance);
    out.emplace_back("ray.gradient", pd.gradient);
    out.emplace_back("ray.variance", pd.variance);
    out.emplace_back("ray.wkb", std::abs(wkb_probability(d.polar.V, d.geometry.g_inv, ctx.q) - d.polar.p()));
    if (d.polar.p() < 1.0 - 1e-6) {
      out.emplace_back("ray.distance_gradient", std::abs(distance_gradient_norm(pt.psi_f, ctx, pt.xi) - 1.0));
    }
    out.emplace_back("ray.laplacian_eigen", laplacian_eigen_residual(pt.psi_f, ctx, pt.xi));
  }
  return out;
}

std::filesystem::path output_path(const RunConfig& config, const std::string& name) {
  std::filesystem::create_directories(config.out);
  return std::filesystem::path(config.out) / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  f << text;
}

}  // namespace

// ---- RunConfig ------------------------------------------------------------

std::string RunConfig::to_json() const {
  json j;
  if (family_descriptor.empty()) {
    j["family"] = family;
  } else {
    j["family"] = json::parse(family_descriptor);
  }
  j["coordinates"] = coordinates;
  j["gauge"] = {{"kind", gauge}};
  if (gauge != "zero") j["gauge"]["coefficients"] = complex_list(gauge_coefficients);
  j["q"] = q;
  j["scheme"] = {{"mode", scheme}, {"h", h}, {"order", order}};
  j["tolerances"] = json::object();
  for (const auto& [name, tol] : tolerances) j["tolerances"][name] = tol;
  j["seed"] = seed;
  j["n_points"] = n_points;
  j["out"] = out;
  j["threads"] = threads;
  return j.dump(2);
}

RunConfig RunConfig::from_json(std::string_view text) {
  RunConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) config_error("config must be a JSON object");
    if (j.contains("family")) {
      const json& f = j.at("family");
      if (f.is_string()) {
        c.family = f.get<std::string>();
      } else if (f.is_object()) {
        c.family_descriptor = f.dump();
        c.family = f.value("name", std::string());
      } else {
        config_error("family must be a name or a descriptor object");
      }
    }
    c.coordinates = j.value("coordinates", c.coordinates);
    if (j.contains("gauge")) {
      const json& g = j.at("gauge");
      c.gauge = g.is_string() ? g.get<std::string>() : g.value("kind", c.gauge);
      if (g.is_object() && g.contains("coefficients")) c.gauge_coefficients = parse_complex_list(g.at("coefficients"));
    }
    c.q = j.value("q", c.q);
    if (j.contains("scheme")) {
      const json& s = j.at("scheme");
      c.scheme = s.value("mode", c.scheme);
      c.h = s.value("h", c.h);
      c.order = s.value("order", c.order);
    }
    if (j.contains("tolerances")) {
      for (const auto& [name, tol] : j.at("tolerances").items()) c.tolerances[name] = tol.get<double>();
    }
    c.seed = j.value("seed", c.seed);
    c.n_points = j.value("n_points", c.n_points);
    c.out = j.value("out", c.out);
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception& e) {
    config_error(std::string("config JSON: ") + e.what());
  }
  c.validate();
  return c;
}

void RunConfig::validate() const {
  if (!(q > 0.0) || !std::isfinite(q)) config_error("q must be positive");
  if (!(h > 0.0)) config_error("scheme step h must be positive");
  if (order != 2 && order != 4) config_error("scheme order must be 2 or 4");
  if (scheme != "finite_difference" && scheme != "analytic") config_error("unknown scheme '" + scheme + "'");
  if (coordinates != "cartesian" && coordinates != "polar") config_error("unknown coordinates '" + coordinates + "'");
  if (gauge != "zero" && gauge != "holomorphic_linear") config_error("unknown gauge '" + gauge + "'");
  if (n_points < 0) config_error("n_points must be non-negative");
  if (threads < 0) config_error("threads must be non-negative");
  for (const auto& [name, tol] : tolerances) {
    if (!default_tolerances().contains(name)) config_error("unknown tolerance '" + name + "'");
    if (!(tol > 0.0)) config_error("tolerance " + name + " must be positive");
  }
}

Context make_context(const RunConfig& config) {
  config.validate();
  FamilyPtr family;
  try {
    family = config.family_descriptor.empty() ? make_builtin_family(config.family)
                                              : family_from_json(config.family_descriptor);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) config_error(e.what());
    throw;
  }
  Context ctx(family, config.q);
  if (config.coordinates == "polar") {
    if (family->k() != 1) config_error("polar coordinates need a one-dimensional chart");
    ctx = ctx.with_coords(Coordinates::bloch_polar());
  }
  if (config.gauge == "holomorphic_linear") {
    if (static_cast<int>(config.gauge_coefficients.size()) != family->k()) {
      config_error("gauge needs one coefficient per complex coordinate");
    }
    ctx = ctx.with_gauge(Gauge::holomorphic_linear(
        Eigen::Map<const ComplexVector>(config.gauge_coefficients.data(), family->k())));
  }
  DiffScheme scheme = config.scheme == "analytic" ? DiffScheme::analytic() : DiffScheme{};
  scheme.h = config.h;
  scheme.order = config.order;
  return ctx.with_scheme(scheme);
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"structure.mixed_type", 1e-6},
      {"structure.curvature", 1e-5},
      {"structure.complex_structure", 1e-10},
      {"structure.hermitian", 1e-8},
      {"structure.kahler_form", 1e-8},
      {"structure.parallel_j", 1e-4},
      {"structure.closed_form", 1e-5},
      {"structure.christoffel_mixed", 1e-6},
      {"structure.christoffel_hermitian", 1e-5},
      {"structure.kahler_symmetry", 1e-5},
      {"structure.kahler_symmetry_conj", 1e-5},
      {"structure.potential", 1e-6},
      {"cauchy_riemann.r1", 1e-5},
      {"cauchy_riemann.r2", 1e-5},
      {"norm_equality", 1e-5},
      {"orthogonality", 1e-5},
      {"scalar.div_V", 1e-4},
      {"scalar.lap_log", 1e-4},
      {"scalar.kahler_pot", 1e-4},
      {"scalar.continuity", 1e-4},
      {"scalar.hj", 1e-4},
      {"scalar.schrodinger", 1e-4},
      {"scalar.mixed_hessian_eta", 1e-4},
      {"ray.distance", 1e-10},
      {"ray.gradient", 1e-5},
      {"ray.variance", 1e-5},
      {"ray.wkb", 1e-5},
      {"ray.distance_gradient", 1e-4},
      {"ray.laplacian_eigen", 1e-4},
  };
  return defaults;
}

// ---- reports --------------------------------------------------------------

bool SuiteReport::pass() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == "fail"; });
}

std::string SuiteReport::to_json(const RunConfig& config) const {
  json j;
  j["checks"] = json::array();
  for (const auto& c : checks) {
    json e = {{"name", c.name}, {"points", c.points}, {"tolerance", c.tolerance}, {"status", c.status}};
    e["max_residual"] = std::isfinite(c.max_residual) ? json(c.max_residual) : json(nullptr);
    j["checks"].push_back(std::move(e));
  }
  j["pass"] = pass();
  j["environment"] = {{"config_hash", config_hash}, {"version", version}};
  j["config"] = json::parse(config.to_json());
  return j.dump(2) + "\n";
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : json::parse(config.to_json()).dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SuiteReport run_verify(const RunConfig& config) {
  const Context ctx = make_context(config);
  const std::vector<VerifyPoint> points = verify_points(config, ctx);
  std::vector<Residuals> results(points.size());
  parallel_for(points.size(), resolve_threads(config.threads),
               [&](std::size_t i) { results[i] = evaluate_point(ctx, points[i]); });

  SuiteReport report;
  report.config_hash = config_hash(config);
  report.version = HOLOBUNDLE_VERSION;
  for (const auto& [name, default_tol] : default_tolerances()) {
    CheckResult check{name, 0, 0.0, tolerance_for(config, name), "pass"};
    for (const auto& r : results) {
      for (const auto& [n, value] : r) {
        if (n != name) continue;
        ++check.points;
        const double v = std::isnan(value) ? std::numeric_limits<double>::infinity() : value;
        check.max_residual = std::max(check.max_residual, v);
      }
    }
    if (check.points == 0) {
      check.status = "skipped";
    } else if (!(check.max_residual <= check.tolerance)) {
      check.status = "fail";
    }
    report.checks.push_back(check);
  }
  return report;
}

CommandResult cmd_verify(const RunConfig& config) {
  const SuiteReport report = run_verify(config);
  return {report.pass() ? 0 : 1, report.to_json(config), {}};
}

// ---- reconstruct ----------------------------------------------------------

CommandResult cmd_reconstruct(const RunConfig& config, std::string_view request) {
  const Context ctx = make_context(config);
  const json req = parse_request(request);
  const int n = ctx.real_dim();
  const auto [psi_f, path, mode] = with_config_errors([&] {
    const std::string m = req.value("mode", std::string("phase"));
    if (m != "phase" && m != "modulus") config_error("mode must be phase or modulus");
    if (!req.contains("psi_f") || !req.contains("path")) config_error("reconstruct needs psi_f and path");
    return std::tuple{parse_state(req.at("psi_f"), &ctx, ctx.family->dim()), parse_path(req.at("path"), n), m};
  });

  const Reconstruction r =
      mode == "phase" ? reconstruct_phase(psi_f, ctx, path) : reconstruct_modulus(psi_f, ctx, path);
  json summary = {{"mode", mode},
                  {"value", r.value},
                  {"direct", r.direct},
                  {"abs_error", std::abs(r.value - r.direct)},
                  {"intervals", r.intervals}};
  if (!path.empty() && is_closed(ctx, path)) {
    summary["closed"] = true;
    summary["circulation"] = circulation(psi_f, ctx, path);
    summary["winding_number"] = static_cast<int>(std::lround(direct_phase_change(psi_f, ctx, path) / (2.0 * std::numbers::pi)));
  } else {
    summary["closed"] = false;
  }
  std::string csv = csv_header({"s"}, n, {"sqrt_p", "eta", "integrand"});
  for (const auto& row : r.trace) csv += csv_row({row.s}, row.xi, {row.sqrt_p, row.eta, row.integrand});
  return {0, summary.dump(2) + "\n", csv};
}

// ---- evolve ---------------------------------------------------------------

CommandResult cmd_evolve(const RunConfig& config, std::string_view request) {
  const Context ctx = make_context(config);
  const json req = parse_request(request);
  const int dim = ctx.family->dim();
  auto [h, psi0, psi_f, dt] = with_config_errors([&] {
    if (!req.contains("hamiltonian") || !req.contains("psi0")) config_error("evolve needs hamiltonian and psi0");
    json hj = req.at("hamiltonian");
    if (req.contains("T") && hj.is_object()) hj["duration"] = req.at("T");
    HamiltonianSpec spec = HamiltonianSpec::from_json(hj.dump());
    if (!(spec.duration >= 0.0)) config_error("duration must be non-negative");
    if (spec.dim != dim) config_error("Hamiltonian dimension does not match the family");
    StateVector f = req.contains("psi_f") ? parse_state(req.at("psi_f"), &ctx, dim) : StateVector::basis(dim, 0);
    return std::tuple{spec, parse_state(req.at("psi0"), &ctx, dim), f, req.value("dt", 0.005)};
  });

  EvolutionTrace trace;
  for (int attempt = 0;; ++attempt) {
    trace = evolve_schrodinger(h, psi0, dt);
    try {
      phase_decomposition(trace, psi_f, ctx);
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::StepTooLarge || attempt >= kMaxDtHalvings) throw;
      dt *= 0.5;
    }
  }

  const int n = ctx.real_dim();
  std::string csv = csv_header({"t"}, n, {"E", "beta", "dynamical", "geometric"});
  double norm_drift = 0.0;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    csv += csv_row({trace.times[i]}, trace.xi[i],
                   {trace.energies[i], trace.beta[i], trace.dynamical[i], trace.geometric[i]});
    norm_drift = std::max(norm_drift, std::abs(trace.states[i].norm() - trace.states.front().norm()));
  }
  const json summary = {{"beta", trace.beta.back() - trace.beta.front()},
                        {"dynamical", trace.dynamical.back()},
                        {"geometric", trace.geometric.back()},
                        {"connection", trace.connection.back()},
                        {"residual", trace.decomposition_residual()},
                        {"steps", trace.times.size() - 1},
                        {"dt", trace.times.size() > 1 ? trace.times[1] - trace.times[0] : 0.0},
                        {"norm_drift", norm_drift}};
  return {0, summary.dump(2) + "\n", csv};
}

// ---- flow -----------------------------------------------------------------

CommandResult cmd_flow(const RunConfig& config, std::string_view request) {
  const Context ctx = make_context(config);
  const json req = parse_request(request);
  const auto [psi_f, start, length, ds, stride] = with_config_errors([&] {
    if (!req.contains("psi_f") || !req.contains("start")) config_error("flow needs psi_f and start");
    return std::tuple{parse_state(req.at("psi_f"), &ctx, ctx.family->dim()), parse_point(req.at("start"), ctx.real_dim()),
                      req.value("arclength", 1.0), req.value("ds", 1e-3), req.value("stride", 10)};
  });
  const std::vector<FlowState> flow = phase_flow(psi_f, ctx, start, length, ds, stride);
  std::string csv = csv_header({"s"}, ctx.real_dim(), {"p", "speed", "e_const"});
  double speed_drift = 0.0, p_drift = 0.0;
  for (const auto& st : flow) {
    csv += csv_row({st.s}, st.xi, {st.p, st.speed, st.e_const});
    speed_drift = std::max(speed_drift, std::abs(st.speed - flow.front().speed));
    p_drift = std::max(p_drift, std::abs(st.p - flow.front().p));
  }
  const json summary = {{"arclength", flow.back().s}, {"rows", flow.size()},   {"speed_drift", speed_drift},
                        {"p_drift", p_drift},         {"e_const", flow.front().e_const}};
  return {0, summary.dump(2) + "\n", csv};
}

// ---- sample ---------------------------------------------------------------

CommandResult cmd_sample(const RunConfig& config, std::string_view request) {
  config.validate();
  const json req = parse_request(request);
  const auto [n, samples, psi_f] = with_config_errors([&] {
    const int dim = req.value("N", 2);
    if (dim < 2) config_error("N must be at least 2");
    const long count = req.value("samples", 100000L);
    if (count < 2) config_error("samples must be at least 2");
    StateVector f = req.contains("psi_f") ? parse_state(req.at("psi_f"), nullptr, dim) : StateVector::basis(dim, 0);
    return std::tuple{dim, count, f};
  });
  const SampleStats stats = mean_transition_probability(psi_f, samples, config.seed, config.threads);
  const double expected = 1.0 / n;
  const json summary = {{"N", n},
                        {"samples", samples},
                        {"mean_p", stats.mean_p},
                        {"stderr", stats.stderr_p},
                        {"expected", expected},
                        {"within_3_stderr", std::abs(stats.mean_p - expected) <= 3.0 * stats.stderr_p},
                        {"seed", config.seed}};
  return {0, summary.dump(2) + "\n", {}};
}

CommandResult run_command(std::string_view command, const RunConfig& config, std::string_view request) {
  CommandResult result;
  if (command == "verify") {
    result = cmd_verify(config);
  } else if (command == "reconstruct") {
    result = cmd_reconstruct(config, request);
  } else if (command == "evolve") {
    result = cmd_evolve(config, request);
  } else if (command == "flow") {
    result = cmd_flow(config, request);
  } else if (command == "sample") {
    result = cmd_sample(config, request);
  } else {
    config_error("unknown command '" + std::string(command) + "'");
  }
  if (!config.out.empty()) {
    const std::string base(command);
    write_file(output_path(config, base + ".json"), result.summary);
    if (!result.csv.empty()) write_file(output_path(config, base + ".csv"), result.csv);
  }
  return result;
}

}  // namespace holobundle
