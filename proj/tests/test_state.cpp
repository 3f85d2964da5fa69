// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "holobundle/coordinates.hpp"
#include "holobundle/family.hpp"
#include "holobundle/gauge.hpp"
#include "holobundle/section.hpp"
#include "support.hpp"

using namespace holobundle;
using namespace hbtest;

TEST_CASE("inner product") {
  const StateVector e0{1.0, 0.0};
  const StateVector e1{0.0, 1.0};
  CHECK(std::abs(inner_product(e0, e1)) == 0.0);
  CHECK(inner_product(e0, e0) == cplx(1.0, 0.0));
  const StateVector plus{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  CHECK(inner_product(plus, e0).real() == doctest::Approx(0.70710678).epsilon(1e-8));

  // conjugate-linear in the first slot
  const StateVector ie0{cplx(0.0, 1.0), 0.0};
  CHECK(std::abs(inner_product(ie0, e0) - cplx(0.0, -1.0)) < 1e-15);

  CHECK(error_of([&] { (void)inner_product(e0, StateVector::basis(3, 0)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("state vectors") {
  CHECK(StateVector::basis(3, 2)[2] == cplx(1.0, 0.0));
  const StateVector v{3.0, cplx(0.0, 4.0)};
  CHECK_FALSE(v.is_normalized());
  CHECK(v.normalized().is_normalized());
  CHECK(std::abs(v.normalized()[1] - cplx(0.0, 0.8)) < 1e-15);
  CHECK(error_of([] { (void)StateVector{0.0, 0.0}.normalized(); }) == ErrorCode::ZeroNorm);
}

TEST_CASE("complex and real chart views are bijective") {
  Gen gen(11);
  for (int i = 0; i < 20; ++i) {
    const ComplexVector z = gen.z(3, 2.0);
    const ChartPoint xi = cartesian_point(z);
    for (int a = 0; a < 3; ++a) {
      CHECK(xi[2 * a] == z[a].real());
      CHECK(xi[2 * a + 1] == z[a].imag());
    }
    CHECK((cartesian_z(xi) - z).norm() == 0.0);
  }
  const Coordinates polar = Coordinates::bloch_polar();
  for (int i = 0; i < 20; ++i) {
    const ChartPoint tp = gen.angles();
    const ComplexVector z = polar.to_z(tp);
    CHECK(std::abs(z[0] - std::polar(std::tan(tp[0] / 2), tp[1])) < 1e-12);
    CHECK((polar.from_z(z, &tp) - tp).norm() < 1e-12);
  }
}

TEST_CASE("bloch family") {
  const FamilyPtr f = make_bloch_family();
  CHECK(f->dim() == 2);
  CHECK(f->k() == 1);
  CHECK(f->ray_space());
  ComplexVector z(1);
  z[0] = 0.0;
  CHECK((f->eval(z) - StateVector{1.0, 0.0}.components()).norm() == 0.0);
  z[0] = 1.0;
  CHECK((f->eval(z) - StateVector{1.0, 1.0}.components()).norm() == 0.0);

  Gen gen(3);
  for (int i = 0; i < 10; ++i) {
    const ComplexVector w = gen.z(1, 3.0);
    CHECK((f->derivative(w, 0) - StateVector{0.0, 1.0}.components()).norm() == 0.0);
  }

  const Context ctx(f);
  const StateVector s = evaluate_section(ctx, point({1.0, 0.0}));
  CHECK(std::abs(s[0] - 0.70710678118654752) < 1e-15);
  CHECK(std::abs(s[1] - 0.70710678118654752) < 1e-15);
  CHECK((evaluate_section(ctx, point({0.0, 0.0})).components() - bloch::up().components()).norm() == 0.0);

  // the polar chart lands on the spin ket up to the section's phase convention
  const Context pctx = ctx.with_coords(Coordinates::bloch_polar());
  for (int i = 0; i < 10; ++i) {
    const ChartPoint tp = gen.angles(0.1);
    const StateVector k = bloch::ket(tp[0], tp[1]);
    CHECK((evaluate_section(pctx, tp).components() - k.components()).norm() < 1e-12);
  }
}

TEST_CASE("coherent family") {
  const FamilyPtr f = make_coherent_family(30, 1.5);
  CHECK(f->dim() == 31);
  CHECK_FALSE(f->ray_space());
  ComplexVector z(1);
  z[0] = 0.0;
  CHECK((f->eval(z) - StateVector::basis(31, 0).components()).norm() == 0.0);

  z[0] = 1.0;
  CHECK(f->eval(z).squaredNorm() == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  Gen gen(5);
  for (int i = 0; i < 20; ++i) {
    const ComplexVector w = gen.z(1, 1.0);
    CHECK(std::abs(f->eval(w).squaredNorm() - std::exp(std::norm(w[0]))) < 1e-10);
  }

  const Context ctx(f);
  const StateVector s = evaluate_section(ctx, point({1.0, 0.0}));
  CHECK(s[0].real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(s[0].real() == doctest::Approx(0.60653).epsilon(1e-5));

  CHECK(error_of([] { (void)make_coherent_family(7, 1.0); }) == ErrorCode::TruncationTooSmall);
  // |z|^2 + 10 sqrt(|z|^2 + 1) at radius 3 needs more than 8 terms
  CHECK(error_of([] { (void)make_coherent_family(8, 3.0); }) == ErrorCode::TruncationTooSmall);
  CHECK_NOTHROW((void)make_coherent_family(20, 1.0));
}

TEST_CASE("projective chart families") {
  const FamilyPtr cp3 = make_cpn_chart_family(3);
  CHECK(cp3->dim() == 4);
  CHECK(cp3->k() == 3);
  CHECK(cp3->traits().projective_chart);
  CHECK((cp3->eval(ComplexVector::Zero(3)) - StateVector::basis(4, 0).components()).norm() == 0.0);

  Gen gen(9);
  const FamilyPtr cp1 = make_cpn_chart_family(1);
  const FamilyPtr bl = make_bloch_family();
  for (int i = 0; i < 20; ++i) {
    const ComplexVector z = gen.z(3, 2.0);
    double expected = 1.0;
    for (int a = 0; a < 3; ++a) expected += std::norm(z[a]);
    CHECK(cp3->eval(z).squaredNorm() == doctest::Approx(expected).epsilon(1e-14));
    for (int a = 0; a < 3; ++a) {
      CHECK((cp3->derivative(z, a) - StateVector::basis(4, a + 1).components()).norm() == 0.0);
    }
    const ComplexVector w = gen.z(1, 2.0);
    CHECK((cp1->eval(w) - bl->eval(w)).norm() == 0.0);
  }

  // chart projection inverts eval up to scale
  const ComplexVector z = gen.z(3, 1.0);
  const ComplexVector psi = cplx(0.3, -0.7) * cp3->eval(z);
  CHECK((cp3->chart_from_state(psi) - z).norm() < 1e-14);
  CHECK(error_of([&] { (void)cp3->chart_from_state(StateVector::basis(4, 1).components()); }) ==
        ErrorCode::ChartEscape);
  CHECK(error_of([] { (void)make_coherent_family(30, 1.0)->chart_from_state(ComplexVector::Ones(31)); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("builtin names and descriptors") {
  CHECK(make_builtin_family("cp2")->k() == 2);
  CHECK(make_builtin_family("bloch")->name() == "bloch");
  CHECK(make_builtin_family("coherent")->dim() == 31);
  CHECK(error_of([] { (void)make_builtin_family("torus"); }) == ErrorCode::ConfigInvalid);

  // (1, z, z^2 / sqrt 2): the spin-1 coherent family in a polynomial descriptor
  const FamilyPtr f = family_from_json(R"({"name":"spin1","kind":"polynomial","k":1,"dim":3,
    "coefficients":[[{"c":[1,0],"powers":[0]}],[{"c":[1.4142135623730951,0],"powers":[1]}],[{"c":[1,0],"powers":[2]}]]})");
  CHECK(f->dim() == 3);
  ComplexVector z(1);
  z[0] = cplx(0.4, -0.3);
  const ComplexVector v = f->eval(z);
  CHECK(std::abs(v[2] - z[0] * z[0]) < 1e-15);
  CHECK(std::abs(f->derivative(z, 0)[2] - 2.0 * z[0]) < 1e-14);
  CHECK(f->eval(z).squaredNorm() == doctest::Approx(std::pow(1.0 + std::norm(z[0]), 2)).epsilon(1e-14));

  CHECK(error_of([] { (void)family_from_json("{not json"); }) == ErrorCode::ConfigInvalid);
  CHECK(error_of([] { (void)family_from_json(R"({"name":"bloch","dim":3})"); }) == ErrorCode::ConfigInvalid);
}

TEST_CASE("domain and norm errors") {
  const Context ctx(make_coherent_family(30, 1.5));
  CHECK(error_of([&] { (void)evaluate_section(ctx, point({2.0, 0.0})); }) == ErrorCode::DomainBoundary);
  CHECK(error_of([&] { (void)section_derivatives(ctx, point({1.4999, 0.0})); }) == ErrorCode::DomainBoundary);

  // a family whose vector vanishes at the origin
  const FamilyPtr zero_at_origin = family_from_json(R"({"name":"z","kind":"polynomial","k":1,
    "coefficients":[[{"c":[1,0],"powers":[1]}],[{"c":[0,1],"powers":[1]}]]})");
  CHECK(error_of([&] { (void)evaluate_section(Context(zero_at_origin), point({0.0, 0.0})); }) == ErrorCode::ZeroNorm);
}

TEST_CASE("section derivative examples") {
  const Context polar = Context(make_bloch_family()).with_coords(Coordinates::bloch_polar());
  const ChartPoint tp = point({pi / 2, 0.0});
  const SectionJet jet = section_jet(polar, tp);
  const cplx a = jet.psi.components().dot(jet.partials[1]);
  CHECK(std::abs(a - cplx(0.0, 0.5)) < 1e-9);

  const Context coh(make_coherent_family(30, 1.5));
  const auto d = section_derivatives(coh, point({0.0, 0.0}));
  CHECK(std::abs(d[0][1] - 1.0) < 1e-9);
  CHECK(std::abs(d[1][1] - cplx(0.0, 1.0)) < 1e-9);
  CHECK(std::abs(d[0][0]) < 1e-9);
}

TEST_CASE("gauge chain rule") {
  // gamma = Re z, so d_x gamma = 1 and d_y gamma = 0
  ComplexVector c(1);
  c[0] = 1.0;
  const Context zero(make_bloch_family());
  const Context shifted = zero.with_gauge(Gauge::holomorphic_linear(c));
  Gen gen(21);
  for (int i = 0; i < 10; ++i) {
    const ChartPoint xi = gen.xi(1, 2.0);
    const StateVector s0 = evaluate_section(zero, xi);
    const StateVector s1 = evaluate_section(shifted, xi);
    const cplx phase = std::polar(1.0, xi[0]);
    CHECK((s1.components() - phase * s0.components()).norm() < 1e-14);

    const auto d0 = section_derivatives(zero, xi);
    const auto d1 = section_derivatives(shifted, xi);
    const ComplexVector expected_x = phase * (d0[0].components() + cplx(0.0, 1.0) * s0.components());
    const ComplexVector expected_y = phase * d0[1].components();
    CHECK((d1[0].components() - expected_x).norm() < 1e-9);
    CHECK((d1[1].components() - expected_y).norm() < 1e-9);
  }
  CHECK(zero.gauge.gamma(ComplexVector::Ones(1)) == 0.0);
}

TEST_CASE("property: holomorphy of every family") {
  Gen gen(101);
  for (const char* name : {"bloch", "coherent", "cp2", "cp3"}) {
    const FamilyPtr f = make_builtin_family(name);
    const double r = std::min(1.0, 0.5 * f->traits().domain_radius);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) worst = std::max(worst, holomorphy_residual(*f, gen.z(f->k(), r)));
    INFO(name);
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("property: normalization and gauge covariance") {
  Gen gen(102);
  for (const char* name : {"bloch", "coherent", "cp2", "cp3"}) {
    const Context ctx(make_builtin_family(name));
    const int k = ctx.k();
    ComplexVector c1(k), c2(k);
    for (int a = 0; a < k; ++a) {
      c1[a] = cplx(gen.normal(), gen.normal());
      c2[a] = cplx(gen.normal(), gen.normal());
    }
    const Context g1 = ctx.with_gauge(Gauge::holomorphic_linear(c1));
    const Context g2 = ctx.with_gauge(Gauge::holomorphic_linear(c2));
    for (int i = 0; i < 30; ++i) {
      const ChartPoint xi = gen.xi(k, 1.0);
      const ComplexVector z = cartesian_z(xi);
      const StateVector s1 = evaluate_section(g1, xi);
      const StateVector s2 = evaluate_section(g2, xi);
      CHECK(s1.is_normalized());
      // gamma = Re sum c_a z^a in both gauges
      const double gamma1 = (c1.transpose() * z).value().real();
      const double gamma2 = (c2.transpose() * z).value().real();
      CHECK((s1.components() - std::polar(1.0, gamma1 - gamma2) * s2.components()).norm() < 1e-12);
    }
  }
}

TEST_CASE("property: analytic and finite-difference derivatives agree") {
  Gen gen(103);
  for (const char* name : {"bloch", "coherent", "cp2", "cp3"}) {
    const Context fd(make_builtin_family(name));
    const Context an = fd.with_scheme(DiffScheme::analytic());
    REQUIRE(an.analytic());
    double worst = 0.0;
    for (int i = 0; i < 30; ++i) {
      const ChartPoint xi = gen.xi(fd.k(), 1.0);
      const auto a = section_derivatives(an, xi);
      const auto f = section_derivatives(fd, xi);
      for (std::size_t mu = 0; mu < a.size(); ++mu) {
        const double scale = std::max(1.0, a[mu].norm());
        worst = std::max(worst, (a[mu].components() - f[mu].components()).norm() / scale);
      }
    }
    INFO(name);
    CHECK(worst <= 1e-6);
  }
}
