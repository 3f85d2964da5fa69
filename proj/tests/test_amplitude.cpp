// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "holobundle/amplitude.hpp"
#include "holobundle/coordinates.hpp"
#include "holobundle/family.hpp"
#include "support.hpp"

using namespace holobundle;
using namespace hbtest;

namespace {

Context bloch_polar() { return Context(make_bloch_family()).with_coords(Coordinates::bloch_polar()); }

// A final state with p >= floor at xi, drawn from the generator.
StateVector final_state(Gen& gen, const Context& ctx, const ChartPoint& xi, double floor = 1e-3) {
  for (;;) {
    const StateVector f = gen.state(ctx.family->dim());
    if (std::norm(inner_product(f, evaluate_section(ctx, xi))) >= floor) return f;
  }
}

}  // namespace

TEST_CASE("polar amplitude examples") {
  const AmplitudePolar a = polar_amplitude(bloch::down(), bloch_polar(), point({pi / 2, pi / 3}));
  CHECK(a.sqrt_p == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(a.eta == doctest::Approx(1.04720).epsilon(1e-5));

  Gen gen(51);
  const Context cp2(make_cpn_chart_family(2));
  const ChartPoint x0 = gen.xi(2, 1.0);
  const AmplitudePolar self = polar_amplitude(evaluate_section(cp2, x0), cp2, x0);
  CHECK(self.sqrt_p == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(self.V.norm() < 1e-9);
  CHECK(self.grad_log_sqrt_p.norm() < 1e-9);

  const Context coh(make_coherent_family(30, 1.5));
  const AmplitudePolar c = polar_amplitude(StateVector::basis(31, 0), coh, point({1.0, 0.0}));
  CHECK(c.sqrt_p == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(std::abs(c.eta) < 1e-14);

  CHECK(error_of([&] { (void)polar_amplitude(bloch::down(), Context(make_bloch_family()), point({0.0, 0.0})); }) ==
        ErrorCode::AmplitudeVanishes);
  CHECK(error_of([&] { (void)polar_amplitude(StateVector::basis(3, 0), coh, point({0.0, 0.0})); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("cauchy-riemann examples") {
  const auto b = cr_residual(bloch::down(), bloch_polar(), point({pi / 2, 0.8}));
  CHECK(b.r1 <= 1e-6);
  CHECK(b.r2 <= 1e-6);

  // coherent overlap with the vacuum is real: V = -A = (y, -x), d log sqrt p = -(x, y)
  const Context coh(make_coherent_family(30, 1.5));
  const ChartPoint xi = point({0.3, 0.4});
  const PointData d = point_data(StateVector::basis(31, 0), coh, xi);
  CHECK((d.polar.V - point({0.4, -0.3})).norm() < 1e-8);
  CHECK((d.polar.grad_log_sqrt_p - point({-0.3, -0.4})).norm() < 1e-8);
  const auto c = cr_residual(StateVector::basis(31, 0), coh, xi);
  CHECK(c.r1 <= 1e-6);
  CHECK(c.r2 <= 1e-6);

  Gen gen(52);
  const Context cp3(make_cpn_chart_family(3));
  for (int i = 0; i < 10; ++i) {
    const ChartPoint x = gen.xi(3, 1.0);
    const auto r = cr_residual(final_state(gen, cp3, x), cp3, x);
    CHECK(r.r1 <= 1e-5);
    CHECK(r.r2 <= 1e-5);
  }
}

TEST_CASE("mixed-index sign is pinned by the bloch example") {
  const PointData d = point_data(bloch::down(), bloch_polar(), point({pi / 2, 0.0}));
  const RealMatrix om = d.geometry.omega_mixed();
  const RealVector& u = d.polar.grad_log_sqrt_p;
  const RealVector& v = d.polar.V;
  CHECK(d.geometry.norm(u - om * v) < 1e-8);
  // the other index placement gets the sign wrong
  const RealMatrix other = d.geometry.g_inv * d.geometry.omega;
  CHECK(d.geometry.norm(u - other.transpose() * v) > 0.5);
  CHECK((om - RealMatrix(d.geometry.omega * d.geometry.g_inv)).norm() == 0.0);
}

TEST_CASE("norm equality and orthogonality") {
  const Context ctx = bloch_polar();
  const PointData d = point_data(bloch::down(), ctx, point({pi / 2, 0.0}));
  CHECK(d.geometry.norm(d.polar.grad_log_sqrt_p) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(d.geometry.norm(d.polar.V) == doctest::Approx(0.5).epsilon(1e-8));
  const auto n = orthogonality_and_norm_check(bloch::down(), ctx, point({pi / 2, 0.0}));
  CHECK(n.norm_gap <= 1e-6);
  CHECK(n.ortho <= 1e-6);

  Gen gen(53);
  const Context cp2(make_cpn_chart_family(2));
  const ChartPoint x0 = gen.xi(2, 1.0);
  const auto self = orthogonality_and_norm_check(evaluate_section(cp2, x0), cp2, x0);
  CHECK(self.norm_gap < 1e-9);
  CHECK(self.ortho < 1e-9);
}

TEST_CASE("scalar identity examples") {
  const ScalarReport b = scalar_identities(bloch::down(), bloch_polar(), point({pi / 2, 0.3}));
  CHECK(b.lap_log <= 1e-4);
  CHECK(b.div_V <= 1e-4);
  REQUIRE(b.mixed_hessian_eta.has_value());
  CHECK(*b.mixed_hessian_eta <= 1e-4);

  const Context coh(make_coherent_family(30, 1.5), 2.0);
  const ScalarReport c = scalar_identities(StateVector::basis(31, 0), coh, point({0.2, -0.5}));
  // log sqrt p = -|z|^2/2 and g = q I, so the Laplacian is -2/q = -2k/q
  CHECK(c.lap_log <= 1e-4);
  CHECK(c.hj <= 1e-4);
  CHECK(c.schrodinger <= 1e-4);

  // a callback gauge has no restricted-gauge Hessian check
  const Context cb = bloch_polar().with_gauge(Gauge::callback([](const ComplexVector& z) { return std::norm(z[0]); }));
  CHECK_FALSE(scalar_identities(bloch::down(), cb, point({1.0, 0.3})).mixed_hessian_eta.has_value());
}

TEST_CASE("phase and modulus reconstruction examples") {
  const Context ctx = bloch_polar();
  const Reconstruction ph =
      reconstruct_phase(bloch::down(), ctx, PathSpec::polyline({point({pi / 2, 0.0}), point({pi / 2, pi / 2})}));
  CHECK(ph.value == doctest::Approx(pi / 2).epsilon(1e-8));
  CHECK(ph.direct == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(ph.trace.size() == 65);

  const Reconstruction mod =
      reconstruct_modulus(bloch::down(), ctx, PathSpec::polyline({point({pi / 2, 0.4}), point({2 * pi / 3, 0.4})}));
  CHECK(mod.value == doctest::Approx(std::sin(pi / 3) / std::sin(pi / 4)).epsilon(1e-8));
  CHECK(mod.value == doctest::Approx(1.22474).epsilon(1e-5));

  const Reconstruction same = reconstruct_modulus(bloch::down(), ctx, PathSpec::polyline({point({1.0, 0.4})}));
  CHECK(same.value == 1.0);
  CHECK(same.direct == 1.0);

  const Context coh(make_coherent_family(30, 1.5));
  const Reconstruction radial =
      reconstruct_modulus(StateVector::basis(31, 0), coh, PathSpec::polyline({point({0.0, 0.0}), point({0.6, 0.8})}));
  CHECK(radial.value == doctest::Approx(std::exp(-0.5)).epsilon(1e-8));

  // contractible loop that avoids the zero at the north pole
  const Context cart(make_bloch_family());
  const Reconstruction loop = reconstruct_phase(bloch::down(), cart, PathSpec::circle(point({1.0, 0.5}), 0.4));
  CHECK(std::abs(loop.value) < 1e-8);
}

TEST_CASE("vortex at the zero of the amplitude") {
  const Context ctx(make_bloch_family());
  const PathSpec loop = PathSpec::circle(point({0.0, 0.0}), 0.1);
  const Reconstruction winding = reconstruct_phase(bloch::down(), ctx, loop);
  CHECK(winding.value == doctest::Approx(2 * pi).epsilon(1e-8));
  // the circulation of V misses the enclosed connection flux: 2 pi (1 - sin^2(theta/2))
  const double r = 0.1;
  CHECK(circulation(bloch::down(), ctx, loop) == doctest::Approx(2 * pi * (1.0 - r * r / (1 + r * r))).epsilon(1e-8));
  CHECK(error_of([&] { (void)circulation(bloch::down(), ctx, PathSpec::arc(point({0.0, 0.0}), 0.1, 0.0, 1.0)); }) ==
        ErrorCode::OpenPath);
}

TEST_CASE("path through a zero reports where") {
  const Context ctx(make_bloch_family());
  const PathSpec p = PathSpec::polyline({point({-0.5, 0.0}), point({0.5, 0.0})});
  try {
    (void)reconstruct_phase(bloch::down(), ctx, p);
    FAIL("expected a path singularity");
  } catch (const PathSingularity& e) {
    CHECK(e.code() == ErrorCode::AmplitudeVanishesOnPath);
    CHECK(e.s() == doctest::Approx(0.5).epsilon(1e-3));
  }
}

TEST_CASE("property: polar form reproduces the amplitude") {
  Gen gen(301);
  for (const char* name : {"bloch", "coherent", "cp2", "cp3"}) {
    const Context ctx(make_builtin_family(name));
    for (int i = 0; i < 20; ++i) {
      const ChartPoint xi = gen.xi(ctx.k(), 1.0);
      const StateVector f = final_state(gen, ctx, xi);
      const AmplitudePolar a = polar_amplitude(f, ctx, xi);
      const cplx direct = inner_product(f, evaluate_section(ctx, xi));
      CHECK(std::abs(std::polar(a.sqrt_p, a.eta) - direct) <= 1e-10);
    }
  }
}

TEST_CASE("property: gauge invariance of amplitude data") {
  Gen gen(302);
  for (const char* name : {"bloch", "cp2", "coherent"}) {
    const Context ctx(make_builtin_family(name));
    const int k = ctx.k();
    ComplexVector c(k);
    for (int a = 0; a < k; ++a) c[a] = cplx(gen.normal(), gen.normal());
    const Context shifted = ctx.with_gauge(Gauge::holomorphic_linear(c));
    for (int i = 0; i < 10; ++i) {
      const ChartPoint xi = gen.xi(k, 0.8);
      const StateVector f = final_state(gen, ctx, xi);
      const AmplitudePolar a0 = polar_amplitude(f, ctx, xi);
      const AmplitudePolar a1 = polar_amplitude(f, shifted, xi);
      CHECK((a0.V - a1.V).norm() <= 1e-8);
      CHECK(std::abs(a0.sqrt_p - a1.sqrt_p) <= 1e-12);
      const auto r0 = cr_residual(f, ctx, xi);
      const auto r1 = cr_residual(f, shifted, xi);
      CHECK(std::abs(r0.r1 - r1.r1) <= 1e-8);
      CHECK(std::abs(r0.r2 - r1.r2) <= 1e-8);
    }
    // reconstructions: the phase change picks up the gauge difference between the endpoints
    const ChartPoint a = gen.xi(k, 0.3);
    const ChartPoint b = gen.xi(k, 0.3);
    const StateVector f = final_state(gen, ctx, a, 0.05);
    if (std::norm(inner_product(f, evaluate_section(ctx, b))) < 0.05) continue;
    const PathSpec p = PathSpec::polyline({a, b});
    try {
      const double dg = shifted.gauge.gamma(cartesian_z(b)) - shifted.gauge.gamma(cartesian_z(a));
      CHECK(std::abs(reconstruct_phase(f, shifted, p).value - reconstruct_phase(f, ctx, p).value - dg) <= 1e-8);
      CHECK(std::abs(reconstruct_modulus(f, shifted, p).value - reconstruct_modulus(f, ctx, p).value) <= 1e-8);
    } catch (const PathSingularity&) {
      // a low-probability segment; nothing to compare
    }
  }
}

TEST_CASE("property: first-order identities at random triples") {
  Gen gen(303);
  for (const char* name : {"bloch", "coherent", "cp2", "cp3"}) {
    for (const DiffScheme& scheme : {DiffScheme::finite_difference(), DiffScheme::analytic()}) {
      const Context ctx = Context(make_builtin_family(name)).with_scheme(scheme);
      double worst_cr = 0.0, worst_norm = 0.0;
      for (int i = 0; i < 25; ++i) {
        const ChartPoint xi = gen.xi(ctx.k(), 1.0);
        const StateVector f = final_state(gen, ctx, xi);
        const auto r = cr_residual(f, ctx, xi);
        const auto n = orthogonality_and_norm_check(f, ctx, xi);
        worst_cr = std::max({worst_cr, r.r1, r.r2});
        worst_norm = std::max({worst_norm, n.norm_gap, n.ortho});
      }
      INFO(name);
      CHECK(worst_cr <= (ctx.analytic() ? 1e-5 : 1e-4));
      CHECK(worst_norm <= 1e-5);
    }
  }
}

TEST_CASE("property: scalar identities at random triples") {
  Gen gen(304);
  for (const char* name : {"bloch", "coherent", "cp2"}) {
    const Context ctx(make_builtin_family(name));
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      const ChartPoint xi = gen.xi(ctx.k(), 1.0);
      const ScalarReport s = scalar_identities(final_state(gen, ctx, xi), ctx, xi);
      worst = std::max({worst, s.div_V, s.continuity, s.lap_log, s.hj});
    }
    INFO(name);
    CHECK(worst <= 1e-4);
  }
}

TEST_CASE("property: homotopic paths agree") {
  Gen gen(305);
  const Context ctx(make_cpn_chart_family(2));
  int compared = 0;
  while (compared < 5) {
    const ChartPoint a = gen.xi(2, 0.8);
    const ChartPoint b = gen.xi(2, 0.8);
    const ChartPoint detour = 0.5 * (a + b) + 0.2 * gen.xi(2, 1.0);
    const StateVector f = gen.state(3);
    // keep the straight segment and the detour triangle well away from zeros
    bool clear = true;
    for (double t = 0.0; t <= 1.0 && clear; t += 0.05) {
      for (const ChartPoint& x : {ChartPoint((1 - t) * a + t * b), ChartPoint((1 - t) * a + t * detour),
                                  ChartPoint((1 - t) * detour + t * b)}) {
        if (std::norm(inner_product(f, evaluate_section(ctx, x))) < 1e-2) clear = false;
      }
    }
    if (!clear) continue;
    const Reconstruction straight = reconstruct_phase(f, ctx, PathSpec::polyline({a, b}));
    const Reconstruction bent = reconstruct_phase(f, ctx, PathSpec::polyline({a, detour, b}));
    CHECK(std::abs(straight.value - bent.value) <= 1e-5);
    CHECK(std::abs(straight.value - straight.direct) <= 1e-5);
    const Reconstruction m = reconstruct_modulus(f, ctx, PathSpec::polyline({a, detour, b}));
    CHECK(std::abs(m.value / m.direct - 1.0) <= 1e-6);
    ++compared;
  }
}
