// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/holobundle.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "holobundle/amplitude.hpp"
#include "holobundle/error.hpp"
#include "holobundle/harness.hpp"
#include "holobundle/ray_space.hpp"

struct hb_family {
  holobundle::FamilyPtr ptr;
};

struct hb_context {
  holobundle::Context ctx;
};

namespace {

using namespace holobundle;

thread_local std::string last_error;

hb_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return HB_ERR_DIMENSION_MISMATCH;
    case ErrorCode::ZeroNorm: return HB_ERR_ZERO_NORM;
    case ErrorCode::DomainBoundary: return HB_ERR_DOMAIN_BOUNDARY;
    case ErrorCode::TruncationTooSmall: return HB_ERR_TRUNCATION_TOO_SMALL;
    case ErrorCode::DegenerateMetric: return HB_ERR_DEGENERATE_METRIC;
    case ErrorCode::AmplitudeVanishes: return HB_ERR_AMPLITUDE_VANISHES;
    case ErrorCode::AmplitudeVanishesOnPath: return HB_ERR_AMPLITUDE_VANISHES_ON_PATH;
    case ErrorCode::NonConvergent: return HB_ERR_NON_CONVERGENT;
    case ErrorCode::NotRaySpaceFamily: return HB_ERR_NOT_RAY_SPACE_FAMILY;
    case ErrorCode::NotNormalized: return HB_ERR_NOT_NORMALIZED;
    case ErrorCode::AntipodalRays: return HB_ERR_ANTIPODAL_RAYS;
    case ErrorCode::IdenticalRays: return HB_ERR_IDENTICAL_RAYS;
    case ErrorCode::SingularPoint: return HB_ERR_SINGULAR_POINT;
    case ErrorCode::StepTooLarge: return HB_ERR_STEP_TOO_LARGE;
    case ErrorCode::ChartEscape: return HB_ERR_CHART_ESCAPE;
    case ErrorCode::OpenPath: return HB_ERR_OPEN_PATH;
    case ErrorCode::ConfigInvalid: return HB_ERR_CONFIG_INVALID;
    case ErrorCode::InvalidArgument: return HB_ERR_INVALID_ARGUMENT;
    case ErrorCode::Internal: return HB_ERR_INTERNAL;
  }
  return HB_ERR_INTERNAL;
}

template <class F>
hb_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HB_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ChartPoint read_point(const hb_context* c, const double* xi) {
  require(xi, "xi");
  const int n = c->ctx.real_dim();
  return Eigen::Map<const RealVector>(xi, n);
}

ComplexVector read_complex(const double* values, int n) {
  require(values, "state");
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = cplx(values[2 * i], values[2 * i + 1]);
  return v;
}

void write_complex(const ComplexVector& v, double* out) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[2 * i] = v[i].real();
    out[2 * i + 1] = v[i].imag();
  }
}

void write_matrix(const RealMatrix& m, double* out) {
  if (out == nullptr) return;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[r * m.cols() + c] = m(r, c);
}

}  // namespace

extern "C" {

const char* hb_version(void) { return HOLOBUNDLE_VERSION; }

const char* hb_last_error(void) { return last_error.c_str(); }

const char* hb_status_name(hb_status status) {
  switch (status) {
    case HB_OK: return "Ok";
    case HB_CHECK_FAILED: return "CheckFailed";
    case HB_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case HB_ERR_ZERO_NORM: return "ZeroNorm";
    case HB_ERR_DOMAIN_BOUNDARY: return "DomainBoundary";
    case HB_ERR_TRUNCATION_TOO_SMALL: return "TruncationTooSmall";
    case HB_ERR_DEGENERATE_METRIC: return "DegenerateMetric";
    case HB_ERR_AMPLITUDE_VANISHES: return "AmplitudeVanishes";
    case HB_ERR_AMPLITUDE_VANISHES_ON_PATH: return "AmplitudeVanishesOnPath";
    case HB_ERR_NON_CONVERGENT: return "NonConvergent";
    case HB_ERR_NOT_RAY_SPACE_FAMILY: return "NotRaySpaceFamily";
    case HB_ERR_NOT_NORMALIZED: return "NotNormalized";
    case HB_ERR_ANTIPODAL_RAYS: return "AntipodalRays";
    case HB_ERR_IDENTICAL_RAYS: return "IdenticalRays";
    case HB_ERR_SINGULAR_POINT: return "SingularPoint";
    case HB_ERR_STEP_TOO_LARGE: return "StepTooLarge";
    case HB_ERR_CHART_ESCAPE: return "ChartEscape";
    case HB_ERR_OPEN_PATH: return "OpenPath";
    case HB_ERR_CONFIG_INVALID: return "ConfigInvalid";
    case HB_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case HB_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

void hb_string_free(char* s) { std::free(s); }

hb_status hb_family_create_builtin(const char* name, hb_family** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = new hb_family{make_builtin_family(name)};
    return HB_OK;
  });
}

hb_status hb_family_from_json(const char* descriptor, hb_family** out) {
  return guarded([&] {
    require(descriptor, "descriptor");
    require(out, "out");
    *out = new hb_family{family_from_json(descriptor)};
    return HB_OK;
  });
}

void hb_family_destroy(hb_family* family) { delete family; }

int hb_family_dim(const hb_family* family) { return family ? family->ptr->dim() : 0; }

int hb_family_k(const hb_family* family) { return family ? family->ptr->k() : 0; }

int hb_family_is_ray_space(const hb_family* family) { return family && family->ptr->ray_space() ? 1 : 0; }

hb_status hb_context_create(const hb_family* family, double q, hb_context** out) {
  return guarded([&] {
    require(family, "family");
    require(out, "out");
    *out = new hb_context{Context(family->ptr, q)};
    return HB_OK;
  });
}

void hb_context_destroy(hb_context* ctx) { delete ctx; }

hb_status hb_context_set_coordinates(hb_context* ctx, const char* name) {
  return guarded([&] {
    require(ctx, "context");
    require(name, "name");
    const std::string n = name;
    if (n == "cartesian") {
      ctx->ctx = ctx->ctx.cartesian();
    } else if (n == "polar") {
      ctx->ctx = ctx->ctx.with_coords(Coordinates::bloch_polar());
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown coordinates '" + n + "'");
    }
    return HB_OK;
  });
}

hb_status hb_context_set_scheme(hb_context* ctx, int analytic, double h, int order) {
  return guarded([&] {
    require(ctx, "context");
    DiffScheme s = DiffScheme::finite_difference(h, order);
    if (analytic != 0) s.mode = DiffScheme::Mode::Analytic;
    ctx->ctx = ctx->ctx.with_scheme(s);
    return HB_OK;
  });
}

hb_status hb_context_set_linear_gauge(hb_context* ctx, const double* coefficients) {
  return guarded([&] {
    require(ctx, "context");
    if (coefficients == nullptr) {
      ctx->ctx = ctx->ctx.with_gauge(Gauge::zero());
    } else {
      ctx->ctx = ctx->ctx.with_gauge(Gauge::holomorphic_linear(read_complex(coefficients, ctx->ctx.k())));
    }
    return HB_OK;
  });
}

hb_status hb_evaluate_section(const hb_context* ctx, const double* xi, double* psi_out) {
  return guarded([&] {
    require(ctx, "context");
    require(psi_out, "psi_out");
    write_complex(evaluate_section(ctx->ctx, read_point(ctx, xi)).components(), psi_out);
    return HB_OK;
  });
}

hb_status hb_berry_connection(const hb_context* ctx, const double* xi, double* a_out) {
  return guarded([&] {
    require(ctx, "context");
    require(a_out, "a_out");
    const RealVector a = berry_connection(ctx->ctx, read_point(ctx, xi));
    std::copy(a.data(), a.data() + a.size(), a_out);
    return HB_OK;
  });
}

hb_status hb_geometric_data(const hb_context* ctx, const double* xi, double* g_out, double* omega_out,
                            double* j_out) {
  return guarded([&] {
    require(ctx, "context");
    const GeometricData d = geometric_data(ctx->ctx, read_point(ctx, xi));
    write_matrix(d.g, g_out);
    write_matrix(d.omega, omega_out);
    write_matrix(d.J, j_out);
    return HB_OK;
  });
}

hb_status hb_polar_amplitude(const hb_context* ctx, const double* psi_f, const double* xi, double* sqrt_p,
                             double* eta, double* v_out, double* grad_log_sqrt_p_out) {
  return guarded([&] {
    require(ctx, "context");
    const StateVector f(read_complex(psi_f, ctx->ctx.family->dim()));
    const AmplitudePolar a = polar_amplitude(f, ctx->ctx, read_point(ctx, xi));
    if (sqrt_p) *sqrt_p = a.sqrt_p;
    if (eta) *eta = a.eta;
    if (v_out) std::copy(a.V.data(), a.V.data() + a.V.size(), v_out);
    if (grad_log_sqrt_p_out) {
      std::copy(a.grad_log_sqrt_p.data(), a.grad_log_sqrt_p.data() + a.grad_log_sqrt_p.size(), grad_log_sqrt_p_out);
    }
    return HB_OK;
  });
}

hb_status hb_cr_residual(const hb_context* ctx, const double* psi_f, const double* xi, double* r1, double* r2) {
  return guarded([&] {
    require(ctx, "context");
    const StateVector f(read_complex(psi_f, ctx->ctx.family->dim()));
    const CauchyRiemannResidual r = cr_residual(f, ctx->ctx, read_point(ctx, xi));
    if (r1) *r1 = r.r1;
    if (r2) *r2 = r.r2;
    return HB_OK;
  });
}

hb_status hb_fs_distance(const double* a, const double* b, int n, double q, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = fs_distance(StateVector(read_complex(a, n)), StateVector(read_complex(b, n)), q);
    return HB_OK;
  });
}

hb_status hb_ray_sample_mean_p(const double* psi_f, int n, long samples, uint64_t seed, double* mean_p,
                               double* stderr_p) {
  return guarded([&] {
    const SampleStats s = mean_transition_probability(StateVector(read_complex(psi_f, n)), samples, seed);
    if (mean_p) *mean_p = s.mean_p;
    if (stderr_p) *stderr_p = s.stderr_p;
    return HB_OK;
  });
}

hb_status hb_run_command(const char* command, const char* config_json, const char* request_json, char** summary,
                         char** csv) {
  return guarded([&] {
    require(command, "command");
    const RunConfig config = config_json ? RunConfig::from_json(config_json) : RunConfig{};
    const CommandResult r = run_command(command, config, request_json ? request_json : "");
    if (summary) *summary = copy_string(r.summary);
    if (csv) *csv = copy_string(r.csv);
    return r.exit_code == 0 ? HB_OK : HB_CHECK_FAILED;
  });
}

}  // extern "C"
