// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <vector>

#include "holobundle/numeric.hpp"
#include "holobundle/parallel.hpp"
#include "holobundle/path.hpp"
#include "holobundle/section.hpp"
#include "support.hpp"

using namespace holobundle;
using namespace hbtest;

TEST_CASE("simpson rules") {
  // exact for cubics
  std::vector<double> f;
  const int n = 9;
  const double h = 2.0 / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    f.push_back(x * x * x - 2 * x + 1);
  }
  CHECK(numeric::simpson(f, h) == doctest::Approx(4.0 - 4.0 + 2.0).epsilon(1e-14));
  // the running sum is exact for quadratics at every node, odd ones included
  std::vector<double> q;
  for (int i = 0; i < n; ++i) q.push_back(3 * i * h * i * h - 1);
  const auto c = numeric::cumulative_simpson(q, h);
  REQUIRE(c.size() == q.size());
  CHECK(c[0] == 0.0);
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    CHECK(c[i] == doctest::Approx(x * x * x - x).epsilon(1e-12));
  }
  CHECK_THROWS((void)numeric::simpson(std::vector<double>{1.0, 2.0}, 1.0));
}

TEST_CASE("branch helpers") {
  CHECK(numeric::nearest_branch(0.1, 2 * pi) == doctest::Approx(0.1 + 2 * pi));
  CHECK(numeric::nearest_branch(-3.0, 3.0) == doctest::Approx(-3.0 + 2 * pi));
  CHECK(numeric::wrap_angle(3 * pi + 0.2) == doctest::Approx(-pi + 0.2));
  Gen gen(41);
  for (int i = 0; i < 100; ++i) {
    const double a = gen.uniform(-50.0, 50.0);
    const double w = numeric::wrap_angle(a);
    CHECK(w > -pi - 1e-12);
    CHECK(w <= pi + 1e-12);
    CHECK(std::abs(std::remainder(a - w, 2 * pi)) < 1e-9);
  }
}

TEST_CASE("finite differences") {
  const auto f = [](const RealVector& x) { return std::sin(x[0]) * std::exp(x[1]); };
  const RealVector x = point({0.7, -0.3});
  CHECK(numeric::central_difference(f, x, 0, 1e-3, 4) == doctest::Approx(std::cos(0.7) * std::exp(-0.3)).epsilon(1e-11));
  CHECK(numeric::richardson_difference(f, x, 1, 1e-2, 4) == doctest::Approx(f(x)).epsilon(1e-11));
  CHECK(numeric::second_partial(f, x, 0, 1, 1e-3) == doctest::Approx(std::cos(0.7) * std::exp(-0.3)).epsilon(1e-7));
}

TEST_CASE("path shapes") {
  const PathSpec line = PathSpec::polyline({point({0.0, 0.0}), point({1.0, 0.0}), point({1.0, 2.0})});
  CHECK(line.pieces() == 2);
  CHECK((line.at(0.5) - point({0.5, 0.0})).norm() < 1e-15);
  CHECK((line.at(1.5) - point({1.0, 1.0})).norm() < 1e-15);
  CHECK((line.end() - point({1.0, 2.0})).norm() == 0.0);

  const PathSpec single = PathSpec::polyline({point({0.3, 0.4})});
  CHECK(single.empty());
  CHECK((single.start() - point({0.3, 0.4})).norm() == 0.0);

  const PathSpec arc = PathSpec::arc(point({1.0, 1.0}), 2.0, 0.0, pi / 2);
  CHECK((arc.start() - point({3.0, 1.0})).norm() < 1e-14);
  CHECK((arc.end() - point({1.0, 3.0})).norm() < 1e-14);

  // tangent falls back to a finite difference
  const PathSpec para = PathSpec::parametric([](double t) { return point({t * t, std::sin(t)}); });
  CHECK((para.tangent(0, 0.5) - point({1.0, std::cos(0.5)})).norm() < 1e-8);

  PathSpec joined = PathSpec::polyline({point({0.0, 0.0}), point({1.0, 0.0})});
  joined.then(arc);
  CHECK(joined.pieces() == 2);
}

TEST_CASE("line integrals") {
  // circulation of x dy around a circle is the enclosed area
  const PathSpec c = PathSpec::circle(point({0.5, -0.2}), 1.5);
  const LineIntegral li = line_integral(c, [](double, const ChartPoint& x, const RealVector& t) { return x[0] * t[1]; });
  CHECK(li.value == doctest::Approx(pi * 2.25).epsilon(1e-10));
  CHECK(li.intervals >= 16);

  // exact differential on a polyline
  const PathSpec p = PathSpec::polyline({point({0.0, 0.0}), point({1.0, 2.0}), point({-1.0, 0.5})});
  const LineIntegral e = line_integral(
      p, [](double, const ChartPoint& x, const RealVector& t) { return 2 * x[0] * x[1] * t[0] + x[0] * x[0] * t[1]; });
  CHECK(e.value == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(line_integral(PathSpec::polyline({point({1.0, 1.0})}), [](double, const ChartPoint&, const RealVector&) {
          return 1.0;
        }).value == 0.0);

  const auto wild = [](double s, const ChartPoint&, const RealVector&) { return std::sin(4000.0 * s); };
  CHECK(error_of([&] { (void)line_integral(p, wild, 1e-14, 1); }) == ErrorCode::NonConvergent);
}

TEST_CASE("unwrapping bisects fast phase steps") {
  // 200 rad over 64 steps: each raw step is close to pi
  const PathSpec p = PathSpec::polyline({point({0.0, 0.0}), point({1.0, 0.0})});
  const auto angle = [](double s, const ChartPoint&) { return std::arg(std::polar(1.0, 200.0 * s)); };
  CHECK(unwrapped_change(p, angle) == doctest::Approx(200.0).epsilon(1e-12));
}

TEST_CASE("closed paths") {
  const Context ctx(make_bloch_family());
  CHECK(is_closed(ctx, PathSpec::circle(point({0.0, 0.0}), 1.0)));
  CHECK_FALSE(is_closed(ctx, PathSpec::arc(point({0.0, 0.0}), 1.0, 0.0, 1.0)));
}

TEST_CASE("parallel_for fills every slot and rethrows") {
  std::vector<int> slots(1000, 0);
  parallel_for(slots.size(), 4, [&](std::size_t i) { slots[i] = static_cast<int>(i) * 2; });
  for (std::size_t i = 0; i < slots.size(); ++i) CHECK(slots[i] == static_cast<int>(i) * 2);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw Error(ErrorCode::Internal, "boom");
                               }),
                  Error);
  CHECK(resolve_threads(3) >= 1);
  CHECK(resolve_threads(3) <= 3);
}
