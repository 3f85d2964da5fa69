// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through the C header only.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "holobundle/holobundle.h"

namespace {

constexpr double pi = std::numbers::pi;

struct Handles {
  hb_family* family = nullptr;
  hb_context* ctx = nullptr;
  explicit Handles(const char* name, double q = 4.0) {
    REQUIRE(hb_family_create_builtin(name, &family) == HB_OK);
    REQUIRE(hb_context_create(family, q, &ctx) == HB_OK);
  }
  ~Handles() {
    hb_context_destroy(ctx);
    hb_family_destroy(family);
  }
  Handles(const Handles&) = delete;
  Handles& operator=(const Handles&) = delete;
};

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(hb_status_name(HB_OK)) == "Ok");
  CHECK(std::string(hb_status_name(HB_ERR_ZERO_NORM)) == "ZeroNorm");
  CHECK(std::string(hb_status_name(HB_CHECK_FAILED)) == "CheckFailed");
  CHECK(std::strlen(hb_version()) > 0);

  hb_family* f = nullptr;
  CHECK(hb_family_create_builtin("cp0", &f) == HB_ERR_INVALID_ARGUMENT);
  CHECK(f == nullptr);
  CHECK(std::string(hb_last_error()).rfind("InvalidArgument: ", 0) == 0);
  CHECK(hb_family_create_builtin(nullptr, &f) == HB_ERR_INVALID_ARGUMENT);
  CHECK(hb_family_from_json("{\"kind\": 3}", &f) != HB_OK);

  hb_family_destroy(nullptr);
  hb_context_destroy(nullptr);
  hb_string_free(nullptr);
}

TEST_CASE("family and context handles") {
  Handles h("cp2");
  CHECK(hb_family_dim(h.family) == 3);
  CHECK(hb_family_k(h.family) == 2);
  CHECK(hb_family_is_ray_space(h.family) == 1);
  CHECK(hb_context_set_coordinates(h.ctx, "polar") == HB_ERR_DIMENSION_MISMATCH);
  CHECK(hb_context_set_coordinates(h.ctx, "weird") == HB_ERR_INVALID_ARGUMENT);
  CHECK(hb_context_set_scheme(h.ctx, 0, 1e-4, 3) == HB_ERR_INVALID_ARGUMENT);
  CHECK(hb_context_set_scheme(h.ctx, 1, 1e-4, 4) == HB_OK);
  CHECK(hb_context_create(nullptr, 4.0, nullptr) == HB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("point queries on the sphere") {
  Handles h("bloch");
  REQUIRE(hb_context_set_coordinates(h.ctx, "polar") == HB_OK);
  const double theta = 1.1, phi = 0.4;
  const double xi[2] = {theta, phi};

  double psi[4];
  REQUIRE(hb_evaluate_section(h.ctx, xi, psi) == HB_OK);
  CHECK(psi[0] == doctest::Approx(std::cos(theta / 2)));
  CHECK(psi[2] == doctest::Approx(std::sin(theta / 2) * std::cos(phi)));

  double a[2];
  REQUIRE(hb_berry_connection(h.ctx, xi, a) == HB_OK);
  CHECK(std::abs(a[0]) < 1e-8);
  CHECK(a[1] == doctest::Approx(std::pow(std::sin(theta / 2), 2)).epsilon(1e-8));

  double g[4], omega[4];
  REQUIRE(hb_geometric_data(h.ctx, xi, g, omega, nullptr) == HB_OK);
  CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(g[3] == doctest::Approx(std::pow(std::sin(theta), 2)).epsilon(1e-8));
  CHECK(omega[1] == doctest::Approx(std::sin(theta)).epsilon(1e-8));

  const double down[4] = {0.0, 0.0, 1.0, 0.0};
  double sqrt_p = 0.0, eta = 0.0, v[2];
  REQUIRE(hb_polar_amplitude(h.ctx, down, xi, &sqrt_p, &eta, v, nullptr) == HB_OK);
  CHECK(sqrt_p == doctest::Approx(std::sin(theta / 2)));
  CHECK(eta == doctest::Approx(phi));
  CHECK(v[1] == doctest::Approx(std::pow(std::cos(theta / 2), 2)).epsilon(1e-8));

  double r1 = 1.0, r2 = 1.0;
  REQUIRE(hb_cr_residual(h.ctx, down, xi, &r1, &r2) == HB_OK);
  CHECK(r1 < 1e-7);
  CHECK(r2 < 1e-7);

  const double up[4] = {1.0, 0.0, 0.0, 0.0};
  const double pole[2] = {pi, 0.0};
  CHECK(hb_polar_amplitude(h.ctx, up, pole, &sqrt_p, &eta, nullptr, nullptr) != HB_OK);

  const double coeffs[2] = {0.3, -0.1};
  REQUIRE(hb_context_set_linear_gauge(h.ctx, coeffs) == HB_OK);
  double r1g = 1.0, r2g = 1.0;
  REQUIRE(hb_cr_residual(h.ctx, down, xi, &r1g, &r2g) == HB_OK);
  CHECK(r1g < 1e-7);
  REQUIRE(hb_context_set_linear_gauge(h.ctx, nullptr) == HB_OK);
}

TEST_CASE("free functions") {
  const double up[4] = {1.0, 0.0, 0.0, 0.0};
  const double down[4] = {0.0, 0.0, 1.0, 0.0};
  double d = 0.0;
  REQUIRE(hb_fs_distance(up, down, 2, 4.0, &d) == HB_OK);
  CHECK(d == doctest::Approx(pi));
  const double unnormalized[4] = {1.0, 0.0, 1.0, 0.0};
  CHECK(hb_fs_distance(up, unnormalized, 2, 4.0, &d) == HB_ERR_NOT_NORMALIZED);

  double mean = 0.0, se = 0.0;
  REQUIRE(hb_ray_sample_mean_p(up, 2, 20000, 11, &mean, &se) == HB_OK);
  CHECK(std::abs(mean - 0.5) < 4 * se);
}

TEST_CASE("commands through the C interface") {
  char* summary = nullptr;
  char* csv = nullptr;
  REQUIRE(hb_run_command("verify", "{\"family\": \"bloch\", \"n_points\": 4}", nullptr, &summary, &csv) == HB_OK);
  CHECK(std::string(summary).find("\"pass\": true") != std::string::npos);
  CHECK(std::string(csv).empty());
  hb_string_free(summary);
  hb_string_free(csv);

  summary = nullptr;
  CHECK(hb_run_command("verify", "{\"family\": \"cp2\", \"n_points\": 4, \"tolerances\": {\"scalar.div_V\": 1e-16}}",
                       nullptr, &summary, nullptr) == HB_CHECK_FAILED);
  REQUIRE(summary != nullptr);
  CHECK(std::string(summary).find("\"pass\": false") != std::string::npos);
  hb_string_free(summary);

  CHECK(hb_run_command("verify", "{\"q\": -2}", nullptr, nullptr, nullptr) == HB_ERR_CONFIG_INVALID);
  CHECK(std::string(hb_last_error()).find("q must be positive") != std::string::npos);

  CHECK(hb_run_command("reconstruct", "{}",
                       "{\"psi_f\": {\"basis\": 1}, \"path\": {\"polyline\": [[-0.5, 0], [0.5, 0]]}}", nullptr,
                       nullptr) == HB_ERR_AMPLITUDE_VANISHES_ON_PATH);
}
